//! Generated *-subalgebras of M_n, commutants and commutator witnesses.

use locality::algebra::{multiplication_kernel_dim, Matrix, StarAlgebra};

fn main() -> locality::Result<()> {
    let z = Matrix::from_ints(&[&[1, 0], &[0, -1]])?;
    let x = Matrix::from_ints(&[&[0, 1], &[1, 0]])?;

    let diag = StarAlgebra::generated(2, &[z])?;
    let flip = StarAlgebra::generated(2, std::slice::from_ref(&x))?;
    println!("dim span{{I, σz}} = {}", diag.dim());
    println!("dim of its commutant = {}", diag.commutant().dim());
    println!("bicommutant equals the algebra: {}", diag.commutant().commutant() == diag);

    if let Some(w) = diag.commutation_witness(&flip)? {
        println!("[{:?}, {:?}] = {:?}", w.left, w.right, w.commutator);
    }

    let full = StarAlgebra::generated(2, &[x, Matrix::from_ints(&[&[1, 0], &[0, 0]])?])?;
    println!("σx and E11 generate M2: {}", full.dim() == 4);

    let kron = |a: &[&[i64]], b: &[&[i64]]| {
        let n = a.len() * b.len();
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| a[i / b.len()][j / b.len()] * b[i % b.len()][j % b.len()]).collect())
            .collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        Matrix::from_ints(&refs)
    };
    let (i2, sx, sz): (&[&[i64]], &[&[i64]], &[&[i64]]) =
        (&[&[1, 0], &[0, 1]], &[&[0, 1], &[1, 0]], &[&[1, 0], &[0, -1]]);
    let left = StarAlgebra::generated(4, &[kron(sx, i2)?, kron(sz, i2)?])?;
    let right = StarAlgebra::generated(4, &[kron(i2, sx)?, kron(i2, sz)?])?;
    println!("M2 ⊗ 1 and 1 ⊗ M2: dims {} and {}", left.dim(), right.dim());
    println!("right is the commutant of left: {}", left.commutant() == right);
    println!("multiplication kernel: {}", multiplication_kernel_dim(&left, &right)?);
    Ok(())
}
