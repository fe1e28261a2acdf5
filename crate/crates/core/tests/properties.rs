use proptest::prelude::*;
use qamnet_core::encode::{bipolar_phases, inverse_sigmoid_phase};
use qamnet_core::memory::{relative_disagreement, HERMITIAN_TOLERANCE, TRACE_TOLERANCE};
use qamnet_core::state::norm_sqr;
use qamnet_core::{
    amplitude_encode, bipolar_encode, decode_phase, phase_encode, sigmoid_phase_map, Complex64,
    EncodingKind, Hologram, PatternStats, RawPattern, StatePattern,
};

fn general_state(n: usize) -> impl Strategy<Value = StatePattern> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n)
        .prop_filter("nonzero", |v| v.iter().any(|(a, b)| *a != 0.0 || *b != 0.0))
        .prop_map(|v| {
            let amps = v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect();
            StatePattern::normalized(amps, EncodingKind::General).unwrap()
        })
}

fn memory_and_input() -> impl Strategy<Value = (Vec<StatePattern>, StatePattern)> {
    (2usize..=64, 1usize..=16)
        .prop_flat_map(|(n, p)| (prop::collection::vec(general_state(n), p), general_state(n)))
}

fn non_constant(n: std::ops::Range<usize>) -> impl Strategy<Value = RawPattern> {
    prop::collection::vec(-100.0f64..100.0, n)
        .prop_filter("non-constant", |v| v.iter().any(|x| *x != v[0]))
        .prop_map(|v| RawPattern::new(v).unwrap())
}

proptest! {
    #[test]
    fn encoders_produce_unit_norm(raw in non_constant(1..64), t in -50.0f64..50.0) {
        for s in [phase_encode(&raw).unwrap(), amplitude_encode(&raw).unwrap(), bipolar_encode(&raw, t)] {
            prop_assert!((norm_sqr(&s) - 1.0).abs() <= 1e-12);
        }
        let scale = (raw.dim() as f64).sqrt();
        for s in [phase_encode(&raw).unwrap(), bipolar_encode(&raw, t)] {
            for z in s.iter() {
                prop_assert!((z.norm() * scale - 1.0).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn sigmoid_is_strictly_increasing(mean in -10.0f64..10.0, std in 0.01f64..10.0, a in -20.0f64..20.0, b in -20.0f64..20.0) {
        prop_assume!(a != b);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let stats = PatternStats { mean, std };
        let v_lo = mean + lo * std;
        let v_hi = mean + hi * std;
        prop_assume!(v_lo < v_hi);
        prop_assert!(sigmoid_phase_map(v_lo, &stats).unwrap() < sigmoid_phase_map(v_hi, &stats).unwrap());
    }

    #[test]
    fn sigmoid_inverse_recovers_value(mean in -10.0f64..10.0, std in 0.01f64..10.0, z in -8.0f64..8.0) {
        let stats = PatternStats { mean, std };
        let v = mean + z * std;
        let phi = sigmoid_phase_map(v, &stats).unwrap();
        prop_assert!((inverse_sigmoid_phase(phi, &stats) - v).abs() <= 1e-9 * (1.0 + v.abs()));
    }

    #[test]
    fn decode_inverts_phase_encode(raw in non_constant(2..64)) {
        let s = phase_encode(&raw).unwrap();
        let back = decode_phase(&s, &raw.stats()).unwrap();
        for (a, b) in back.values().iter().zip(raw.values()) {
            prop_assert!((a - b).abs() <= 1e-9 * (1.0 + b.abs()), "{a} vs {b}");
        }
    }

    #[test]
    fn bipolar_is_bitwise_phase_zero_or_pi(raw in non_constant(1..64), t in -50.0f64..50.0) {
        let b = bipolar_encode(&raw, t);
        let p = StatePattern::from_phases(&bipolar_phases(&raw, t)).unwrap();
        prop_assert_eq!(b.amplitudes(), p.amplitudes());
    }

    #[test]
    fn hermitian_with_trace_p((patterns, _input) in memory_and_input()) {
        let h = Hologram::build(&patterns).unwrap();
        prop_assert!(h.hermiticity_residual() <= HERMITIAN_TOLERANCE);
        prop_assert!((h.trace() - Complex64::new(patterns.len() as f64, 0.0)).norm() <= TRACE_TOLERANCE);
    }

    #[test]
    fn dense_and_lazy_agree((patterns, input) in memory_and_input()) {
        let h = Hologram::build(&patterns).unwrap();
        let d = h.recall_dense(&input).unwrap();
        let l = h.recall_lazy(&input).unwrap();
        prop_assert!(relative_disagreement(&d, &l) <= 1e-10);
    }

    #[test]
    fn recall_is_linear((patterns, x) in memory_and_input(), ar in -2.0f64..2.0, ai in -2.0f64..2.0, br in -2.0f64..2.0, bi in -2.0f64..2.0) {
        let h = Hologram::build(&patterns).unwrap();
        let y: Vec<Complex64> = x.iter().rev().copied().collect();
        let (a, b) = (Complex64::new(ar, ai), Complex64::new(br, bi));
        let combo: Vec<Complex64> = x.iter().zip(&y).map(|(u, v)| a * u + b * v).collect();
        let lhs = h.recall_dense(&combo).unwrap();
        let rx = h.recall_dense(&x).unwrap();
        let ry = h.recall_dense(&y).unwrap();
        for ((l, u), v) in lhs.iter().zip(&rx).zip(&ry) {
            prop_assert!((l - (a * u + b * v)).norm() <= 1e-10);
        }
    }

    #[test]
    fn overlaps_obey_cauchy_schwarz((patterns, input) in memory_and_input()) {
        let h = Hologram::build(&patterns).unwrap();
        let r = h.overlaps(&input).unwrap();
        prop_assert!(r.coefficients.iter().all(|c| c.norm() <= 1.0 + 1e-9));
        prop_assert!(r.confidence <= 1.0 + 1e-9);
        prop_assert!(r.margin >= 0.0);
    }

    #[test]
    fn global_phase_does_not_change_recognition((patterns, input) in memory_and_input(), theta in 0.0f64..std::f64::consts::TAU) {
        let h = Hologram::build(&patterns).unwrap();
        let rot = Complex64::new(theta.cos(), theta.sin());
        let turned: Vec<Complex64> = input.iter().map(|z| z * rot).collect();
        let a = h.overlaps(&input).unwrap();
        let b = h.overlaps(&turned).unwrap();
        for (x, y) in a.moduli().iter().zip(b.moduli()) {
            prop_assert!((x - y).abs() <= 1e-12);
        }
    }

    #[test]
    fn xnor_for_single_bipolar_pattern(bits in prop::collection::vec(any::<bool>(), 1..48)) {
        let raw = RawPattern::new(bits.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect()).unwrap();
        let s = bipolar_encode(&raw, 0.5);
        let h = Hologram::build(&[s]).unwrap();
        let n = bits.len();
        for r in 0..n {
            for c in 0..n {
                let xnor = if bits[r] == bits[c] { 1.0 } else { -1.0 };
                let scaled = h.entry(r, c) * n as f64;
                prop_assert!((scaled.re - xnor).abs() < 1e-12 && scaled.im == 0.0);
            }
        }
    }

    #[test]
    fn save_load_roundtrip((patterns, _input) in memory_and_input()) {
        let h = Hologram::build(&patterns).unwrap();
        let bytes = h.to_bytes();
        let back = Hologram::from_bytes(&bytes).unwrap();
        prop_assert_eq!(back.to_bytes(), bytes);
    }
}
