//! Finite-dimensional matrix *-algebras over `Q[i]`.

use num_traits::{One, Zero};

use super::matrix::{kernel, rank, rref, rref_coordinates, span_intersection, Matrix};
use super::partition::Partition;
use super::scalar::GaussianRational as Q;
use crate::error::{Error, Result};

/// A unital *-subalgebra of `M_n(Q[i])`, stored as the reduced row echelon
/// basis of its vectorisation. Two algebras are equal iff they are the same
/// subspace.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StarAlgebra {
    n: usize,
    basis: Vec<Matrix>,
    pivots: Vec<usize>,
}

impl std::fmt::Debug for StarAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "StarAlgebra(n={}, dim={})", self.n, self.dim())
    }
}

fn vectorise(mats: &[Matrix]) -> Vec<Vec<Q>> {
    mats.iter().map(|m| m.as_vec().to_vec()).collect()
}

impl StarAlgebra {
    fn from_span(n: usize, vectors: Vec<Vec<Q>>) -> Self {
        let (rows, pivots) = if vectors.is_empty() { (Vec::new(), Vec::new()) } else { rref(vectors) };
        StarAlgebra {
            n,
            basis: rows.into_iter().map(|v| Matrix::from_vec(n, v)).collect(),
            pivots,
        }
    }

    /// Smallest unital *-closed algebra containing `generators`.
    ///
    /// Iterates span closure under adjoints and pairwise products; the
    /// dimension grows strictly until it stabilises, and can never exceed `n²`.
    pub fn generated(n: usize, generators: &[Matrix]) -> Result<Self> {
        for g in generators {
            if g.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: g.dim() });
            }
        }
        let mut seed = vec![Matrix::identity(n)];
        for g in generators {
            seed.push(g.clone());
            seed.push(g.adjoint());
        }
        let mut alg = StarAlgebra::from_span(n, vectorise(&seed));
        loop {
            let mut next: Vec<Matrix> = alg.basis.clone();
            for a in &alg.basis {
                next.push(a.adjoint());
                for b in &alg.basis {
                    next.push(a.mul(b));
                }
            }
            let grown = StarAlgebra::from_span(n, vectorise(&next));
            if grown.dim() > n * n {
                return Err(Error::internal(format!(
                    "span closure exceeded n² = {} (dim {})",
                    n * n,
                    grown.dim()
                )));
            }
            if grown.dim() == alg.dim() {
                return Ok(grown);
            }
            alg = grown;
        }
    }

    pub fn scalars(n: usize) -> Self {
        StarAlgebra::from_span(n, vectorise(&[Matrix::identity(n)]))
    }

    pub fn full(n: usize) -> Self {
        let units: Vec<Matrix> =
            (0..n).flat_map(|i| (0..n).map(move |j| Matrix::unit(n, i, j))).collect();
        StarAlgebra::from_span(n, vectorise(&units))
    }

    /// `S_P` realised as diagonal matrices on the ambient points.
    pub fn from_partition(p: &Partition) -> Self {
        let n = p.ambient_len();
        let indicators: Vec<Matrix> = p
            .blocks()
            .iter()
            .map(|b| {
                let mut d = vec![Q::zero(); n];
                for &i in b {
                    d[i] = Q::one();
                }
                Matrix::diagonal(d)
            })
            .collect();
        StarAlgebra::from_span(n, vectorise(&indicators))
    }

    pub fn matrix_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn coordinates(&self, m: &Matrix) -> Option<Vec<Q>> {
        if m.dim() != self.n {
            return None;
        }
        rref_coordinates(&vectorise(&self.basis), &self.pivots, m.as_vec())
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.coordinates(m).is_some()
    }

    pub fn contains_algebra(&self, other: &StarAlgebra) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// Re-verifies unit, product closure and adjoint closure exactly.
    pub fn verify(&self) -> Result<()> {
        if !self.contains(&Matrix::identity(self.n)) {
            return Err(Error::internal("identity not in span"));
        }
        for (i, a) in self.basis.iter().enumerate() {
            if !self.contains(&a.adjoint()) {
                return Err(Error::internal(format!("adjoint of basis element {i} not in span")));
            }
            for (j, b) in self.basis.iter().enumerate() {
                if !self.contains(&a.mul(b)) {
                    return Err(Error::internal(format!("product of basis {i}·{j} not in span")));
                }
            }
        }
        Ok(())
    }

    /// All of `M_n` commuting with this algebra, as the exact kernel of the
    /// linear system `X·S − S·X = 0` over the basis elements `S`.
    pub fn commutant(&self) -> StarAlgebra {
        let n = self.n;
        let width = n * n;
        let mut rows = Vec::new();
        for s in &self.basis {
            for r in 0..n {
                for c in 0..n {
                    // (XS − SX)[r][c] = Σ_k X[r][k] S[k][c] − Σ_k S[r][k] X[k][c]
                    let mut row = vec![Q::zero(); width];
                    for k in 0..n {
                        row[r * n + k] += s.get(k, c);
                        row[k * n + c] += &-s.get(r, k);
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let ker = if rows.is_empty() {
            (0..width)
                .map(|i| {
                    let mut v = vec![Q::zero(); width];
                    v[i] = Q::one();
                    v
                })
                .collect()
        } else {
            kernel(rows, width)
        };
        StarAlgebra::from_span(n, ker)
    }

    /// `S ∩ T` as a span intersection.
    pub fn intersection(&self, other: &StarAlgebra) -> Result<StarAlgebra> {
        self.check_same_dim(other)?;
        let w = span_intersection(&vectorise(&self.basis), &vectorise(&other.basis), self.n * self.n);
        Ok(StarAlgebra::from_span(self.n, w))
    }

    pub fn center(&self) -> StarAlgebra {
        self.intersection(&self.commutant()).expect("same dimension")
    }

    fn check_same_dim(&self, other: &StarAlgebra) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    /// First pair of basis elements that fail to commute, with their commutator.
    pub fn commutation_witness(&self, other: &StarAlgebra) -> Result<Option<CommutatorWitness>> {
        self.check_same_dim(other)?;
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in other.basis.iter().enumerate() {
                let c = a.commutator(b);
                if !c.is_zero() {
                    return Ok(Some(CommutatorWitness {
                        left_index: i,
                        right_index: j,
                        left: a.clone(),
                        right: b.clone(),
                        commutator: c,
                    }));
                }
            }
        }
        Ok(None)
    }
}

/// A non-commuting pair of basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutatorWitness {
    pub left_index: usize,
    pub right_index: usize,
    pub left: Matrix,
    pub right: Matrix,
    pub commutator: Matrix,
}

/// `dim(A)·dim(B) − rank(a ⊗ b ↦ ab)` for commuting `A`, `B`.
///
/// Zero certifies that multiplication `A ⊗ B → A ∨ B` is injective.
pub fn multiplication_kernel_dim(a: &StarAlgebra, b: &StarAlgebra) -> Result<usize> {
    if let Some(w) = a.commutation_witness(b)? {
        return Err(Error::Precondition(format!(
            "algebras do not commute: [a{}, b{}] = {:?}",
            w.left_index, w.right_index, w.commutator
        )));
    }
    let products: Vec<Vec<Q>> = a
        .basis()
        .iter()
        .flat_map(|x| b.basis().iter().map(move |y| x.mul(y).as_vec().to_vec()))
        .collect();
    Ok(a.dim() * b.dim() - rank(products))
}

/// A unital *-homomorphism given by the images of the domain basis.
#[derive(Debug, Clone)]
pub struct StarHom {
    domain: StarAlgebra,
    codomain: StarAlgebra,
    images: Vec<Matrix>,
}

impl StarHom {
    /// Checks that the images lie in the codomain and that the linear
    /// extension preserves the unit, products and adjoints.
    pub fn new(domain: StarAlgebra, codomain: StarAlgebra, images: Vec<Matrix>) -> Result<Self> {
        if images.len() != domain.dim() {
            return Err(Error::input(format!(
                "{} images given for a domain of dimension {}",
                images.len(),
                domain.dim()
            )));
        }
        for (i, m) in images.iter().enumerate() {
            if !codomain.contains(m) {
                return Err(Error::input(format!("image of basis element {i} is not in the codomain")));
            }
        }
        let hom = StarHom { domain, codomain, images };
        hom.verify()?;
        Ok(hom)
    }

    /// Evaluates a linear function on the domain basis.
    pub fn from_linear_fn(
        domain: StarAlgebra,
        codomain: StarAlgebra,
        f: impl Fn(&Matrix) -> Matrix,
    ) -> Result<Self> {
        let images = domain.basis().iter().map(f).collect();
        StarHom::new(domain, codomain, images)
    }

    pub fn identity(alg: StarAlgebra) -> Self {
        let images = alg.basis().to_vec();
        StarHom { domain: alg.clone(), codomain: alg, images }
    }

    /// Inclusion of a subalgebra.
    pub fn inclusion(sub: StarAlgebra, sup: StarAlgebra) -> Result<Self> {
        let images = sub.basis().to_vec();
        StarHom::new(sub, sup, images)
    }

    pub fn domain(&self) -> &StarAlgebra {
        &self.domain
    }

    pub fn codomain(&self) -> &StarAlgebra {
        &self.codomain
    }

    pub fn apply(&self, m: &Matrix) -> Option<Matrix> {
        let c = self.domain.coordinates(m)?;
        Some(Matrix::combination(self.codomain.matrix_dim(), &c, &self.images))
    }

    fn verify(&self) -> Result<()> {
        let n = self.domain.matrix_dim();
        let m = self.codomain.matrix_dim();
        let bad = |what: String| Err(Error::input(format!("not a *-homomorphism: {what}")));
        if self.apply(&Matrix::identity(n)).as_ref() != Some(&Matrix::identity(m)) {
            return bad("unit not preserved".into());
        }
        for (i, a) in self.domain.basis().iter().enumerate() {
            if self.apply(&a.adjoint()).as_ref() != Some(&self.images[i].adjoint()) {
                return bad(format!("adjoint of basis element {i} not preserved"));
            }
            for (j, b) in self.domain.basis().iter().enumerate() {
                let lhs = self.apply(&a.mul(b));
                if lhs.as_ref() != Some(&self.images[i].mul(&self.images[j])) {
                    return bad(format!("product of basis elements {i}·{j} not preserved"));
                }
            }
        }
        Ok(())
    }

    pub fn kernel_dim(&self) -> usize {
        let rows: Vec<Vec<Q>> = self.images.iter().map(|m| m.as_vec().to_vec()).collect();
        self.domain.dim() - if rows.is_empty() { 0 } else { rank(rows) }
    }

    /// True iff `ker f = {0}`, which certifies that `f` reflects commutativity.
    /// `false` leaves reflection undecided.
    pub fn kernel_trivial(&self) -> bool {
        self.kernel_dim() == 0
    }
}

/// Free-function form of [`StarHom::kernel_trivial`].
pub fn hom_kernel_trivial(f: &StarHom) -> bool {
    f.kernel_trivial()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sz() -> Matrix {
        Matrix::from_ints(&[&[1, 0], &[0, -1]]).unwrap()
    }

    fn sx() -> Matrix {
        Matrix::from_ints(&[&[0, 1], &[1, 0]]).unwrap()
    }

    #[test]
    fn generated_examples() {
        let d = StarAlgebra::generated(2, &[sz()]).unwrap();
        assert_eq!(d.dim(), 2);
        assert!(d.contains(&Matrix::identity(2)) && d.contains(&sz()));
        assert_eq!(StarAlgebra::generated(2, &[sz(), sx()]).unwrap().dim(), 4);
        assert_eq!(StarAlgebra::generated(1, &[]).unwrap().dim(), 1);
    }

    #[test]
    fn generated_rejects_wrong_dimension() {
        let e = StarAlgebra::generated(3, &[sz()]);
        assert!(matches!(e, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn non_normal_generator_closes_under_adjoint() {
        // E12 alone generates all of M2 once E21 = E12* is added.
        let a = StarAlgebra::generated(2, &[Matrix::unit(2, 0, 1)]).unwrap();
        assert_eq!(a, StarAlgebra::full(2));
        a.verify().unwrap();
    }

    #[test]
    fn commutant_examples() {
        let d = StarAlgebra::generated(2, &[sz()]).unwrap();
        assert_eq!(d.commutant(), d);
        assert_eq!(StarAlgebra::full(2).commutant(), StarAlgebra::scalars(2));
        assert_eq!(StarAlgebra::scalars(2).commutant(), StarAlgebra::full(2));
        assert_eq!(StarAlgebra::full(2).center(), StarAlgebra::scalars(2));
    }

    #[test]
    fn commutant_solves_commutator_equation() {
        // Oracle: [x, σz] = 0 directly on a generic 2×2 unknown forces x diagonal.
        let d = StarAlgebra::generated(2, &[sz()]).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let e = Matrix::unit(2, i, j);
                assert_eq!(e.commutator(&sz()).is_zero(), d.commutant().contains(&e));
            }
        }
    }

    #[test]
    fn multiplication_kernel_examples() {
        let amb4_a = Partition::from_blocks(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let amb4_b = Partition::from_blocks(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
        let a = StarAlgebra::from_partition(&amb4_a);
        let b = StarAlgebra::from_partition(&amb4_b);
        assert_eq!(multiplication_kernel_dim(&a, &b).unwrap(), 0);

        let s = StarAlgebra::scalars(3);
        assert_eq!(multiplication_kernel_dim(&s, &s).unwrap(), 0);

        let l = StarAlgebra::from_partition(&Partition::from_blocks(3, vec![vec![0, 1], vec![2]]).unwrap());
        let r = StarAlgebra::from_partition(&Partition::from_blocks(3, vec![vec![0], vec![1, 2]]).unwrap());
        assert_eq!(multiplication_kernel_dim(&l, &r).unwrap(), 1);
    }

    #[test]
    fn multiplication_kernel_rejects_noncommuting() {
        let z = StarAlgebra::generated(2, &[sz()]).unwrap();
        let x = StarAlgebra::generated(2, &[sx()]).unwrap();
        assert!(matches!(multiplication_kernel_dim(&z, &x), Err(Error::Precondition(_))));
    }

    #[test]
    fn hom_kernel_examples() {
        let m2 = StarAlgebra::full(2);
        assert!(hom_kernel_trivial(&StarHom::identity(m2.clone())));

        let diag = StarAlgebra::generated(2, &[sz()]).unwrap();
        let proj = StarHom::from_linear_fn(diag.clone(), StarAlgebra::full(1), |m| {
            Matrix::from_rows(vec![vec![m.get(0, 0).clone()]]).unwrap()
        })
        .unwrap();
        assert!(!hom_kernel_trivial(&proj));
        assert_eq!(proj.kernel_dim(), 1);

        let incl = StarHom::inclusion(diag, m2).unwrap();
        assert!(hom_kernel_trivial(&incl));
    }

    #[test]
    fn non_homomorphisms_are_rejected() {
        let m2 = StarAlgebra::full(2);
        // Transpose is linear and unital but reverses products.
        let t = StarHom::from_linear_fn(m2.clone(), m2.clone(), |m| {
            let mut t = Matrix::zeros(2);
            for i in 0..2 {
                for j in 0..2 {
                    t.set(j, i, m.get(i, j).clone());
                }
            }
            t
        });
        assert!(t.is_err());
        // Zero map is not unital.
        assert!(StarHom::from_linear_fn(m2.clone(), m2, |_| Matrix::zeros(2)).is_err());
    }
}
