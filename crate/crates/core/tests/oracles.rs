//! Fast enumeration against independent brute-force oracles.

use mixedbad::dangerous::{ApproxParams, MultiNormParams, NormTerm, QRange};
use mixedbad::dnorm::DigitSequence;
use mixedbad::exactnum::{Exponent, RInterval, Rational};
use mixedbad::verify::{naive_avoidance_oracle, oracle_is_dangerous, proximity_oracle};

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

const EXPONENTS: [(&str, &str); 3] = [("1/3", "2/3"), ("1/2", "1/2"), ("2/3", "1/3")];
const SEQS: [&str; 3] = ["per:2", "per:3", "per:2,3"];

fn grid_params(c: &str) -> Vec<ApproxParams> {
    let mut out = Vec::new();
    for (i, j) in EXPONENTS {
        for s in SEQS {
            out.push(ApproxParams::new(&q(i), &q(j), q(c), s.parse().unwrap()).unwrap());
        }
    }
    out
}

#[test]
fn dangerous_qs_match_trial_test_up_to_1e5() {
    const Q_MAX: u64 = 100_000;
    for c in ["1/4096", "1/64", "1/2"] {
        for p in grid_params(c) {
            let fast = p.dangerous_qs(QRange::up_to(Q_MAX));
            let slow: Vec<u64> = (1..=Q_MAX).filter(|&q| oracle_is_dangerous(p.norms(), p.c(), q)).collect();
            assert_eq!(fast, slow, "c={c} seq={} i={}", p.seq(), p.i());
        }
    }
}

#[test]
fn meeting_sets_match_naive_oracle() {
    let intervals = ["0,1", "1/3,1/2", "-2/7,1/9", "5/17,5/17", "1/1024,3/1024"];
    for c in ["1/4096", "1/64"] {
        for p in grid_params(c) {
            for s in intervals {
                let iv: RInterval = s.parse().unwrap();
                let range = QRange::up_to(3000);
                let fast = p.dangerous_meeting(range, &iv);
                let naive = naive_avoidance_oracle(&iv, &p, range);
                let lattice = proximity_oracle(&iv, &p, range);
                assert_eq!(naive.violation_count as usize, fast.len(), "{s} c={c} seq={} i={}", p.seq(), p.i());
                assert_eq!(naive.witnesses[..], fast[..naive.witnesses.len()]);
                assert_eq!(lattice.violation_count, naive.violation_count);
                assert_eq!(lattice.witnesses, naive.witnesses);
            }
        }
    }
}

/// `v_p(q)` by repeated division.
fn p_adic_valuation(p: u64, mut q: u64) -> u32 {
    let mut v = 0;
    while q.is_multiple_of(p) {
        q /= p;
        v += 1;
    }
    v
}

#[test]
fn d_norm_matches_p_adic_norm() {
    for p in [2u32, 3, 5] {
        let seq = DigitSequence::constant(p).unwrap();
        for q in 1..=10_000u64 {
            let v = p_adic_valuation(p as u64, q);
            let got = seq.d_norm_u64(q).unwrap();
            assert_eq!(got.level, v, "p={p} q={q}");
            assert_eq!(got.value, Rational::new(1, (p as u64).pow(v)).unwrap());
        }
    }
}

#[test]
fn second_norm_strictly_thins_the_dangerous_set() {
    // the first term is the same weight in both; only the second can thin
    let third = Exponent::from_rational(&q("1/3")).unwrap();
    let term = |s: &str| NormTerm {
        seq: s.parse().unwrap(),
        exponent: third,
    };
    let c = q("1/64");
    let one = MultiNormParams::new(vec![term("per:2")], Exponent::from_rational(&q("2/3")).unwrap())
        .unwrap()
        .with_c(c.clone())
        .unwrap();
    let two = MultiNormParams::new(vec![term("per:2"), term("per:3")], third)
        .unwrap()
        .with_c(c)
        .unwrap();
    let range = QRange::up_to(1 << 22);
    let a = one.dangerous_qs(range);
    let b = two.dangerous_qs(range);
    assert!(!b.is_empty());
    assert!(b.len() < a.len(), "{} vs {}", b.len(), a.len());
    assert!(b.iter().all(|q| a.binary_search(q).is_ok()));
    for &q in &b {
        assert!(oracle_is_dangerous(two.norms(), two.c(), q));
    }
}
