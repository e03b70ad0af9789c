//! Reference values from adaptive quadrature (scipy `quad`, 1e-12 relative
//! tolerance) of the same integrals, independent of the trapezoid rule used
//! here.

use llps_core::channel::DpcChannelParams;
use llps_core::rates::{snr_at_rate, RateIntegrator};

fn integ() -> RateIntegrator {
    RateIntegrator::default()
}

#[test]
fn bpsk_awgn_capacity() {
    // 0 dB is the textbook 0.4859 point
    for (snr, want) in [(0.0, 0.485_944_154_132_935_5), (3.0, 0.720_660_888_666_060_4)] {
        let got = integ()
            .rate_int_as_noise(&DpcChannelParams::without_interference(snr))
            .unwrap();
        assert!((got - want).abs() < 1e-8, "{snr} dB: {got} vs {want}");
    }
}

#[test]
fn interference_as_noise_rate() {
    let got = integ()
        .rate_int_as_noise(&DpcChannelParams::from_db(2.0, -5.0))
        .unwrap();
    assert!((got - 0.503_431_437_178_256_6).abs() < 1e-8, "{got}");
}

#[test]
fn dpc_rate_at_fixed_q() {
    for (snr, sir, q, want) in [
        (2.0, -5.0, 0.6, 0.544_028_145_554_613_9),
        (-1.0, -2.0, 0.7, 0.347_380_353_077_252_1),
    ] {
        let got = integ().rate_dpc(&DpcChannelParams::from_db(snr, sir), q).unwrap();
        assert!((got - want).abs() < 1e-8, "{snr} {sir} {q}: {got} vs {want}");
    }
}

#[test]
fn crossings_at_the_operating_rate() {
    let i = integ();
    let ian = snr_at_rate(0.4696, -3.0, 7.0, 1e-6, |s| {
        i.rate_int_as_noise(&DpcChannelParams::from_db(s, -5.0))
    })
    .unwrap();
    let dpc = snr_at_rate(0.4696, -3.0, 7.0, 1e-6, |s| {
        i.optimize_q(&DpcChannelParams::from_db(s, -5.0)).map(|(_, r)| r)
    })
    .unwrap();
    assert!((ian - 1.3425).abs() < 2e-3, "{ian}");
    assert!((dpc - 0.5850).abs() < 2e-3, "{dpc}");
    let (q, _) = i.optimize_q(&DpcChannelParams::from_db(dpc, -5.0)).unwrap();
    assert!((q - 0.6189).abs() < 2e-3, "{q}");
}
