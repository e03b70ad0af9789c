use llps_core::gf2::{find_invertible_right_block, BitMatrix, BitVector};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = BitMatrix> {
    proptest::collection::vec(proptest::bool::ANY, rows * cols).prop_map(move |bits| {
        let rows_v = bits
            .chunks(cols)
            .map(|c| BitVector::from_bools(c.iter().copied()))
            .collect();
        BitMatrix::from_rows(rows_v, cols).unwrap()
    })
}

fn dims() -> impl Strategy<Value = BitMatrix> {
    (1usize..12, 1usize..80).prop_flat_map(|(r, c)| matrix(r, c))
}

fn vector(len: usize) -> impl Strategy<Value = BitVector> {
    proptest::collection::vec(proptest::bool::ANY, len).prop_map(BitVector::from_bools)
}

// Rank by plain elimination on dense bool rows.
fn naive_rank(h: &BitMatrix) -> usize {
    let mut rows: Vec<Vec<bool>> = (0..h.nrows())
        .map(|r| (0..h.ncols()).map(|c| h.get(r, c)).collect())
        .collect();
    let mut rank = 0;
    for c in 0..h.ncols() {
        if let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) {
            rows.swap(rank, p);
            for r in 0..rows.len() {
                if r != rank && rows[r][c] {
                    let pivot = rows[rank].clone();
                    for (x, y) in rows[r].iter_mut().zip(pivot) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

proptest! {
    #[test]
    fn rank_matches_naive_elimination(h in dims()) {
        prop_assert_eq!(h.rank(), naive_rank(&h));
        prop_assert_eq!(h.transpose().rank(), h.rank());
    }

    #[test]
    fn nullspace_is_a_basis_of_the_kernel(h in dims()) {
        let basis = h.nullspace_basis();
        prop_assert_eq!(basis.len(), h.ncols() - h.rank());
        for x in &basis {
            prop_assert!(h.mul_vec_mt(x).unwrap().is_zero());
        }
        if !basis.is_empty() {
            let b = BitMatrix::from_rows(basis.clone(), h.ncols()).unwrap();
            prop_assert_eq!(b.rank(), basis.len());
        }
    }

    #[test]
    fn product_is_linear((h, x, y) in (1usize..10, 1usize..100).prop_flat_map(|(r, c)| (matrix(r, c), vector(c), vector(c)))) {
        let sum = &x ^ &y;
        let lhs = h.mul_vec_mt(&sum).unwrap();
        let rhs = &h.mul_vec_mt(&x).unwrap() ^ &h.mul_vec_mt(&y).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn transpose_is_an_involution(h in dims()) {
        prop_assert_eq!(h.transpose().transpose(), h);
    }

    #[test]
    fn inverse_when_full_rank(a in (1usize..14).prop_flat_map(|n| matrix(n, n))) {
        match a.invert() {
            Ok(inv) => {
                prop_assert_eq!(naive_rank(&a), a.nrows());
                prop_assert_eq!(a.mul(&inv).unwrap(), BitMatrix::identity(a.nrows()));
                prop_assert_eq!(inv.mul(&a).unwrap(), BitMatrix::identity(a.nrows()));
            }
            Err(_) => prop_assert!(naive_rank(&a) < a.nrows()),
        }
    }

    #[test]
    fn right_block_is_invertible_and_rightmost(h in (1usize..9, 0usize..10).prop_flat_map(|(m, extra)| matrix(m, m + extra))) {
        match find_invertible_right_block(&h) {
            Ok(block) => {
                let sub = h.select_columns(&block.columns);
                prop_assert_eq!(sub.mul(&block.inverse).unwrap(), BitMatrix::identity(h.nrows()));
                // greedy from the right: a column is skipped only when it is
                // spanned by chosen columns to its right
                for c in 0..h.ncols() {
                    if block.columns.contains(&c) { continue; }
                    let right: Vec<usize> = block.columns.iter().copied().filter(|&j| j > c).collect();
                    let mut with = right.clone();
                    with.push(c);
                    prop_assert_eq!(
                        naive_rank(&h.select_columns(&with)),
                        naive_rank(&h.select_columns(&right))
                    );
                }
            }
            Err(_) => prop_assert!(naive_rank(&h) < h.nrows()),
        }
    }
}

#[test]
fn packing_boundaries() {
    for len in [1, 63, 64, 65, 127, 128, 129] {
        let ones = BitVector::ones(len);
        assert_eq!(ones.weight(), len);
        assert_eq!(ones.slice(1, len).weight(), len - 1);
        let v = BitVector::unit(len, len - 1);
        assert_eq!(v.ones_positions().collect::<Vec<_>>(), vec![len - 1]);
        assert_eq!(BitVector::zeros(len).concat(&v).weight(), 1);
    }
}
