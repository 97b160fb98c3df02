//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Run with `cargo test -p qdis-core --test acceptance`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::time::{Duration, Instant};

use rand::Rng;

use qdis_core::channels::{apply_isotropic, apply_local, pauli_mixture_kraus, quality_factor, KrausSet, PauliMixture};
use qdis_core::cloning::{min_copies, net_shrink, threshold, CloningMode, MinCopies};
use qdis_core::factory::{
    bell, random_mixed, random_product, random_pure, random_unitary, rng_from_seed, schmidt, werner, Bell,
};
use qdis_core::geometry::{bell_diag_eof, decompose, fef_direct, in_tetrahedron, profile, FEF_DEFAULT_BUDGET};
use qdis_core::ideal::{batch_ideal_check, IDEAL_TOL};
use qdis_core::separability::{det_m, is_product, ppt_verdict};
use qdis_core::sweep::threshold_sweep;
use qdis_core::TwoQubitState;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Criteria 1 and 2 share one 50×50×91 sweep.
fn threshold_and_oracle() -> (Outcome, Outcome) {
    let start = Instant::now();
    let res = threshold_sweep(50, 91).expect("sweep runs");
    let elapsed = start.elapsed();
    let c1 = outcome(
        res.disagreements == 0 && elapsed < Duration::from_secs(60),
        format!("disagreements={} outside 1e-3 band, runtime={:.2?}", res.disagreements, elapsed),
    );
    let c2 = outcome(
        res.oracle_mismatches == 0,
        format!("mismatches={} of {} compared points", res.oracle_mismatches, res.oracle_compared),
    );
    (c1, c2)
}

fn q_max() -> Outcome {
    let out = apply_isotropic(&bell(Bell::PhiPlus), 1.0, 1.0 / 3.0).unwrap();
    let min = ppt_verdict(&out).min_pt_eigenvalue;
    let q = quality_factor(1.0, 1.0 / 3.0);
    outcome(
        (-1e-9..=1e-9).contains(&min) && (q - 2.0 / 3.0).abs() <= 1e-12,
        format!("min_pt_eig={min:e}, Q={q}"),
    )
}

fn ic_extremes() -> Outcome {
    let bell_dev = Bell::ALL
        .iter()
        .map(|&b| (profile(&bell(b)).unwrap().ic - 2.0).abs())
        .fold(0.0, f64::max);
    let mut rng = rng_from_seed(0xA4);
    let max_ic = (0..10_000)
        .map(|_| profile(&random_mixed(&mut rng)).unwrap().ic)
        .fold(0.0, f64::max);
    let mixed_ic = profile(&TwoQubitState::maximally_mixed()).unwrap().ic;
    outcome(
        bell_dev <= 1e-12 && max_ic <= 2.0 + 1e-9 && mixed_ic == 0.0,
        format!("max |Ic(Bell)-2|={bell_dev:e}, max Ic(random)={max_ic}, Ic(I/4)={mixed_ic}"),
    )
}

fn channel_structure() -> Outcome {
    let mut rng = rng_from_seed(0xA5);
    let mut worst = 0.0f64;
    for i in 0..500 {
        let rho = if i % 2 == 0 { random_mixed(&mut rng) } else { random_pure(&mut rng) };
        let e1: f64 = rng.random_range(0.0..=1.0);
        let e2: f64 = rng.random_range(0.0..=1.0);
        let d0 = decompose(&rho).unwrap();
        let d1 = decompose(&apply_isotropic(&rho, e1, e2).unwrap()).unwrap();
        for a in 0..3 {
            worst = worst.max((d1.r[a] - e1 * d0.r[a]).abs());
            worst = worst.max((d1.s[a] - e2 * d0.s[a]).abs());
            for b in 0..3 {
                worst = worst.max((d1.t[a][b] - e1 * e2 * d0.t[a][b]).abs());
            }
        }
    }
    outcome(worst <= 1e-12, format!("max coefficient deviation={worst:e}"))
}

/// States (U_A ⊗ V) ρ_k (U_A ⊗ V)† with a shared V and ρ_k diagonal on B
/// share an eigenbasis of their reduced B states.
fn commuting_family_dephasing() -> Outcome {
    let mut rng = rng_from_seed(0xA6);
    let v = random_unitary(&mut rng);
    let states: Vec<TwoQubitState> = (0..100)
        .map(|i| {
            let ua = random_unitary(&mut rng);
            let base = if i % 2 == 0 {
                schmidt(rng.random_range(0.0..=FRAC_PI_2))
            } else {
                // a mixture of two Schmidt states stays diagonal on B
                let p: f64 = rng.random_range(0.0..=1.0);
                let a = *schmidt(rng.random_range(0.0..=FRAC_PI_2)).matrix();
                let b = *schmidt(rng.random_range(0.0..=FRAC_PI_2)).matrix();
                TwoQubitState::new(a.scale_real(p) + b.scale_real(1.0 - p)).unwrap()
            };
            qdis_core::factory::local_unitary(&base, &ua, &v).unwrap()
        })
        .collect();
    let rep = batch_ideal_check(&states, IDEAL_TOL).unwrap();
    let max_delta = rep
        .reports
        .iter()
        .map(|r| r.reduced_a_delta.max(r.reduced_b_delta))
        .fold(0.0, f64::max);
    let min_pt = rep
        .reports
        .iter()
        .map(|r| r.verdict.min_pt_eigenvalue)
        .fold(f64::INFINITY, f64::min);
    outcome(
        rep.commuting_family && max_delta <= 1e-10 && min_pt >= -1e-10,
        format!(
            "commuting_family={}, max reduced delta={max_delta:e}, min PT eig={min_pt:e}",
            rep.commuting_family
        ),
    )
}

fn monotonicity() -> Outcome {
    let mut rng = rng_from_seed(0xA7);
    let mut worst = f64::NEG_INFINITY;
    for i in 0..1000 {
        let rho = if i % 3 == 0 { random_pure(&mut rng) } else { random_mixed(&mut rng) };
        let w: [f64; 4] = std::array::from_fn(|_| -rng.random_range(f64::EPSILON..1.0f64).ln());
        let sum: f64 = w.iter().sum();
        let mut p = w.map(|x| x / sum);
        p[0] = 1.0 - p[1] - p[2] - p[3];
        let k = pauli_mixture_kraus(&PauliMixture::new(p).unwrap());
        let id = KrausSet::identity();
        let out = if rng.random_bool(0.5) {
            apply_local(&rho, &k, &id)
        } else {
            apply_local(&rho, &id, &k)
        }
        .unwrap();
        let inc = profile(&out).unwrap().ic - profile(&rho).unwrap().ic;
        worst = worst.max(inc);
    }
    outcome(worst <= 1e-9, format!("max Ic increase={worst:e}"))
}

fn cloning_bounds() -> Outcome {
    let sym = min_copies(CloningMode::LocalSymmetric);
    let non = min_copies(CloningMode::Nonlocal);
    let exact_boundary = net_shrink(CloningMode::Nonlocal, 6).unwrap() == threshold();
    let phi = bell(Bell::PhiPlus);
    let sep = ppt_verdict(&apply_isotropic(&phi, 5.0 / 9.0, 5.0 / 9.0).unwrap());
    let ent = ppt_verdict(&apply_isotropic(&phi, 2.0 / 3.0, 2.0 / 3.0).unwrap());
    outcome(
        sym == MinCopies::Copies(3)
            && non == MinCopies::Copies(6)
            && exact_boundary
            && sep.is_separable()
            && !ent.is_separable(),
        format!(
            "local_symmetric={sym}, nonlocal={non}, m=6 exact={exact_boundary}, eta=5/9 {}, eta=2/3 {}",
            sep.verdict.as_str(),
            ent.verdict.as_str()
        ),
    )
}

fn fef_consistency() -> Outcome {
    let mut worst = 0.0f64;
    let family = (0..19)
        .map(|k| schmidt(k as f64 * FRAC_PI_2 / 18.0))
        .chain((0..=10).map(|k| werner(k as f64 / 10.0)));
    for rho in family {
        let direct = fef_direct(&rho, FEF_DEFAULT_BUDGET);
        let closed = profile(&rho).unwrap().f;
        worst = worst.max((direct - closed).abs());
    }
    outcome(worst <= 1e-6, format!("max |fef_direct - (1+N)/4|={worst:e} over 30 states"))
}

fn classical_persistence() -> Outcome {
    let mut failures = Vec::new();
    let mut min_det = f64::INFINITY;
    for th in [PI / 8.0, PI / 6.0, FRAC_PI_4] {
        for prod in [0.1f64, 1.0 / 3.0] {
            for (e1, e2) in [(prod.sqrt(), prod.sqrt()), (1.0, prod), (prod, 1.0)] {
                let out = apply_isotropic(&schmidt(th), e1, e2).unwrap();
                let d = det_m(&out);
                min_det = min_det.min(d);
                if is_product(&out, 1e-9) || d <= 1e-6 {
                    failures.push(format!("theta={th:.4} eta=({e1:.4},{e2:.4})"));
                }
            }
        }
        for (e1, e2) in [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)] {
            let out = apply_isotropic(&schmidt(th), e1, e2).unwrap();
            if !is_product(&out, 1e-12) {
                failures.push(format!("theta={th:.4} eta=({e1},{e2}) not product"));
            }
        }
    }
    outcome(failures.is_empty(), format!("min det M={min_det:e}; failures={failures:?}"))
}

fn eof() -> Outcome {
    let e1 = bell_diag_eof(1.0).unwrap();
    let e_half = bell_diag_eof(0.5).unwrap();
    let grid: Vec<f64> = (0..1000).map(|i| bell_diag_eof(0.5 + 0.5 * i as f64 / 999.0).unwrap()).collect();
    let monotone = grid.windows(2).all(|w| w[1] >= w[0]);
    outcome(
        e1 == 1.0 && e_half == 0.0 && monotone,
        format!("E(1)={e1}, E(1/2)={e_half}, nondecreasing={monotone}"),
    )
}

fn geometry() -> Outcome {
    let mut rng = rng_from_seed(0xAC);
    let mut outside = 0;
    let mut sep_count = 0;
    let mut max_sep_n = 0.0f64;
    for i in 0..10_000 {
        let rho = match i % 4 {
            0 => random_pure(&mut rng),
            1 => random_product(&mut rng),
            _ => random_mixed(&mut rng),
        };
        let p = profile(&rho).unwrap();
        if !in_tetrahedron(&p.t_canonical, 1e-9) {
            outside += 1;
        }
        if ppt_verdict(&rho).is_separable() {
            sep_count += 1;
            max_sep_n = max_sep_n.max(p.n);
        }
    }
    outcome(
        outside == 0 && max_sep_n <= 1.0 + 1e-9,
        format!("outside tetrahedron={outside}, PPT-separable samples={sep_count}, max N among them={max_sep_n}"),
    )
}

fn main() {
    let (c1, c2) = threshold_and_oracle();
    let results = vec![
        ("AC-1 threshold eta1*eta2 <= 1/3", c1),
        ("AC-2 analytic margin vs numerical PPT", c2),
        ("AC-3 Q_max = 2/3 at (1, 1/3)", q_max()),
        ("AC-4 Ic extremes", ic_extremes()),
        ("AC-5 channel structure r'=e1 r, s'=e2 s, T'=e1 e2 T", channel_structure()),
        ("AC-6 ideal disentangler on commuting family", commuting_family_dephasing()),
        ("AC-7 Ic monotone under one-sided Pauli mixtures", monotonicity()),
        ("AC-8 cloning bounds M>=3 / M>=6", cloning_bounds()),
        ("AC-9 fully entangled fraction direct vs (1+N)/4", fef_consistency()),
        ("AC-10 classical correlations persist", classical_persistence()),
        ("AC-11 Bell-diagonal entanglement of formation", eof()),
        ("AC-12 characteristic vectors in tetrahedron", geometry()),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        println!("[{}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {} failed", results.len() - failed, failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
