use llps_core::bp::BpDecoder;
use llps_core::channel::LLR_CLAMP;
use llps_core::codec::{agreement, label, DpcEncoder, LlpsEncoder};
use llps_core::gf2::BitVector;
use llps_core::ldpc::LinearCodeLayout;
use llps_core::sdm::CostFunction;
use proptest::prelude::*;

fn bits(len: usize) -> impl Strategy<Value = BitVector> {
    proptest::collection::vec(any::<bool>(), len).prop_map(BitVector::from_bools)
}

fn interferer(len: usize) -> impl Strategy<Value = Vec<i8>> {
    proptest::collection::vec(prop_oneof![Just(-1i8), Just(1i8)], len)
}

fn saturated(c: &BitVector) -> Vec<f64> {
    c.iter().map(|b| if b { -LLR_CLAMP } else { LLR_CLAMP }).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn layered_output_is_a_codeword(v in bits(280), p0 in 0.05f64..0.95) {
        let enc = LlpsEncoder::new(LinearCodeLayout::wimax_rate_half(24, 8).unwrap(), false).unwrap();
        let c = enc.llps_encode(&v, &CostFunction::cross_entropy(p0).unwrap()).unwrap();
        prop_assert!(enc.layout().syndrome(c.bits()).unwrap().is_zero());
        prop_assert_eq!(c.systematic(), v);
    }

    #[test]
    fn dpc_noiseless_round_trip(u in bits(264), z in interferer(576)) {
        let layout = LinearCodeLayout::wimax_rate_half(24, 8).unwrap().shorten(8).unwrap();
        let enc = DpcEncoder::new(layout, 264, 3, false).unwrap();
        let c = enc.encode(&u, &z).unwrap();
        prop_assert!(enc.layout().syndrome(c.bits()).unwrap().is_zero());
        prop_assert!(c.bits().slice(0, 8).is_zero());
        let mut dec = BpDecoder::new(enc.layout().graph());
        let out = dec.decode(&saturated(c.bits()), 100).unwrap();
        prop_assert!(out.converged);
        prop_assert_eq!(enc.recover_info(&out.hard.slice(0, enc.layout().systematic_len())).unwrap(), u);
    }
}

#[test]
fn dpc_output_leans_towards_the_label() {
    let layout = LinearCodeLayout::wimax_rate_half(24, 8).unwrap();
    let enc = DpcEncoder::new(layout, 272, 11, true).unwrap();
    let n = enc.layout().n();
    let mut total = 0.0;
    for f in 0..50u64 {
        let u = BitVector::from_bools((0..272).map(|i| (i as u64 * 2654435761 + f * 97) % 5 < 2));
        let z: Vec<i8> = (0..n)
            .map(|i| if (i as u64 * 40503 + f * 13) % 7 < 3 { 1 } else { -1 })
            .collect();
        let c = enc.encode(&u, &z).unwrap();
        total += agreement(c.bits(), &label(&z).unwrap(), 0..n);
    }
    // uniform bits would agree half the time
    assert!(total / 50.0 > 0.53, "{}", total / 50.0);
}
