#![allow(dead_code)]

use locality::algebra::{all_partitions, GaussianRational, Matrix, Partition};
use locality::independence::PartitionPair;

pub fn idx(n: usize, blocks: &[&[usize]]) -> Partition {
    Partition::from_blocks(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
}

/// Two crossed 2-block partitions of four points.
pub fn grid() -> PartitionPair {
    PartitionPair::new(idx(4, &[&[0, 1], &[2, 3]]), idx(4, &[&[0, 2], &[1, 3]])).unwrap()
}

/// Overlapping halves of three points.
pub fn halves() -> PartitionPair {
    PartitionPair::new(idx(3, &[&[0, 1], &[2]]), idx(3, &[&[0], &[1, 2]])).unwrap()
}

/// Every ordered pair of partitions of `n` points.
pub fn all_pairs(n: usize) -> Vec<PartitionPair> {
    let all: Vec<Partition> = all_partitions(n).collect();
    let mut out = Vec::with_capacity(all.len() * all.len());
    for a in &all {
        for b in &all {
            out.push(PartitionPair::new(a.clone(), b.clone()).unwrap());
        }
    }
    out
}

pub fn pairs_up_to(n: usize) -> Vec<PartitionPair> {
    (1..=n).flat_map(all_pairs).collect()
}

/// Every permutation of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn ints(rows: &[&[i64]]) -> Matrix {
    Matrix::from_ints(rows).unwrap()
}

fn complex(re: i64, im: i64) -> GaussianRational {
    GaussianRational::from_parts((re, 1), (im, 1)).unwrap()
}

/// Generator sets for `M_n`, `n ≤ 4`.
pub fn generator_corpus() -> Vec<(usize, Vec<Matrix>)> {
    let mut corpus = Vec::new();
    for n in 1..=4 {
        corpus.push((n, vec![]));
        corpus.push((n, vec![Matrix::identity(n)]));
        corpus.push((n, vec![Matrix::diagonal((0..n as i64).map(GaussianRational::from_int).collect())]));
        corpus.push((n, vec![Matrix::unit(n, 0, n - 1)]));
        if n >= 2 {
            corpus.push((n, vec![Matrix::unit(n, 0, 0), Matrix::unit(n, 1, 1)]));
            let mut h = Matrix::zeros(n);
            h.set(0, 1, complex(0, 1));
            h.set(1, 0, complex(0, -1));
            corpus.push((n, vec![h]));
            let mut shift = Matrix::zeros(n);
            for i in 0..n {
                shift.set(i, (i + 1) % n, GaussianRational::from_int(1));
            }
            corpus.push((n, vec![shift]));
        }
        if n == 4 {
            let sx_i = ints(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]]);
            let sz_i = ints(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, -1]]);
            corpus.push((4, vec![sx_i.clone()]));
            corpus.push((4, vec![sx_i, sz_i]));
            corpus.push((4, vec![ints(&[&[1, 2, 0, 0], &[0, 3, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 5]])]));
        }
        if n == 3 {
            corpus.push((3, vec![ints(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 2]])]));
        }
    }
    corpus
}
