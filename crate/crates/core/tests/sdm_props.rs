use llps_core::gf2::{BitMatrix, BitVector};
use llps_core::sdm::{CostFunction, SdmSpec};
use proptest::prelude::*;

/// Full-row-rank `m × (m + ell)` matrix: random rows, then the identity is
/// added on the right to guarantee rank.
fn parity_former() -> impl Strategy<Value = BitMatrix> {
    (1usize..7, 0usize..6).prop_flat_map(|(m, ell)| {
        proptest::collection::vec(proptest::bool::ANY, m * (m + ell)).prop_map(move |bits| {
            let cols = m + ell;
            let rows = (0..m)
                .map(|r| {
                    let mut v = BitVector::from_bools(bits[r * cols..(r + 1) * cols].iter().copied());
                    v.flip(ell + r);
                    v
                })
                .collect();
            let h = BitMatrix::from_rows(rows, cols).unwrap();
            // flipping may cancel; fall back to [0 | I] when it does
            if h.rank() == m {
                h
            } else {
                let rows = (0..m).map(|r| BitVector::unit(cols, ell + r)).collect();
                BitMatrix::from_rows(rows, cols).unwrap()
            }
        })
    })
}

/// Minimum cost over every vector with the given syndrome.
fn brute_min(h: &BitMatrix, s: &BitVector, cost: &CostFunction) -> f64 {
    let n = h.ncols();
    (0u64..1 << n)
        .map(|x| BitVector::from_words(vec![x], n))
        .filter(|x| &h.mul_vec_mt(x).unwrap() == s)
        .map(|x| cost.eval(&x).unwrap())
        .fold(f64::INFINITY, f64::min)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matches_brute_force_for_every_syndrome(h in parity_former(), p0 in 0.02f64..0.98, seed in any::<u64>(), materialize in any::<bool>()) {
        let sdm = SdmSpec::build(h.clone(), materialize).unwrap();
        let n = h.ncols();
        let target = BitVector::from_words(vec![seed], n);
        let costs = [
            CostFunction::HammingWeight,
            CostFunction::cross_entropy(p0).unwrap(),
            CostFunction::pattern_match(target),
        ];
        for i in 0u64..1 << h.nrows() {
            let s = BitVector::from_words(vec![i], h.nrows());
            for cost in &costs {
                let p = sdm.match_syndrome(&s, cost).unwrap();
                prop_assert_eq!(&sdm.recover_syndrome(&p).unwrap(), &s);
                let got = cost.eval(&p).unwrap();
                let want = brute_min(&h, &s, cost);
                prop_assert!((got - want).abs() < 1e-9, "syndrome {}: {} vs {}", i, got, want);
            }
        }
    }

    #[test]
    fn coset_has_two_to_the_ell_members(h in parity_former()) {
        let sdm = SdmSpec::build(h.clone(), true).unwrap();
        let table = sdm.coset_table().unwrap();
        prop_assert_eq!(table.len(), 1usize << sdm.ell());
        let distinct: std::collections::BTreeSet<Vec<u64>> = table.iter().map(|x| x.words().to_vec()).collect();
        prop_assert_eq!(distinct.len(), table.len());
        for x in &table {
            prop_assert!(h.mul_vec_mt(x).unwrap().is_zero());
        }
    }

    #[test]
    fn pattern_in_coset_is_returned_exactly(h in parity_former(), seed in any::<u64>()) {
        let sdm = SdmSpec::build(h.clone(), false).unwrap();
        let x = BitVector::from_words(vec![seed], h.ncols());
        let s = h.mul_vec_mt(&x).unwrap();
        prop_assert_eq!(sdm.match_syndrome(&s, &CostFunction::pattern_match(x.clone())).unwrap(), x);
    }
}

#[test]
fn table_and_walk_agree_including_ties() {
    let h = BitMatrix::from_dense(&[
        [1u8, 1, 0, 1, 0, 0, 1, 0],
        [0, 1, 1, 0, 1, 0, 0, 1],
        [1, 0, 1, 0, 0, 1, 1, 1],
    ])
    .unwrap();
    let walk = SdmSpec::build(h.clone(), false).unwrap();
    let table = SdmSpec::build(h, true).unwrap();
    for i in 0u64..8 {
        let s = BitVector::from_words(vec![i], 3);
        for cost in [CostFunction::HammingWeight, CostFunction::cross_entropy(0.7).unwrap()] {
            assert_eq!(
                walk.match_syndrome(&s, &cost).unwrap(),
                table.match_syndrome(&s, &cost).unwrap()
            );
        }
    }
}

#[test]
fn uniform_cross_entropy_returns_particular_solution() {
    let h = BitMatrix::from_dense(&[[1u8, 0, 1, 1], [0, 1, 1, 0]]).unwrap();
    let sdm = SdmSpec::build(h, false).unwrap();
    let s = BitVector::from_bits(&[1, 1]);
    let half = CostFunction::cross_entropy(0.5).unwrap();
    assert_eq!(
        sdm.match_syndrome(&s, &half).unwrap(),
        sdm.particular_solution(&s).unwrap()
    );
}
