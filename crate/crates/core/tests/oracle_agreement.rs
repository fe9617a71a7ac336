use num_complex::Complex64;
use xx0::chain::{
    energy, enumerate_bethe_states, norm_squared, persistence_domain_wall, persistence_domain_wall_spectral,
    persistence_ferro, persistence_ferro_spectral, scalar_product, walker_amplitude, walker_amplitude_multi,
};
use xx0::combinat::StrictPartition;
use xx0::oracle::{
    bethe_gram, build_state_vector, eigen_residual, oracle_domain_wall, oracle_ferro, oracle_walker, pair, Sector,
    SectorBasis,
};

const BETAS: [f64; 4] = [0.0, 0.5, 1.0, 2.0];

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(b.norm()).max(1e-13 / tol)
}

#[test]
fn ferro_three_way() {
    let mut worst = 0.0f64;
    for m in 1..=8 {
        for big_n in 1..=3.min(m + 1) {
            for n in 0..=m + 1 {
                for beta in BETAS {
                    let b = Complex64::new(beta, 0.0);
                    let det = persistence_ferro(m, big_n, n, b).unwrap().value;
                    let spec = persistence_ferro_spectral(m, big_n, n, b).unwrap().value;
                    let ed = oracle_ferro(m, big_n, n, b).unwrap();
                    assert!(close(det, ed, 1e-9), "det M={m} N={big_n} n={n} b={beta}: {det} vs {ed}");
                    assert!(close(spec, ed, 1e-9), "spec M={m} N={big_n} n={n} b={beta}: {spec} vs {ed}");
                    assert!(det.im.abs() < 1e-9);
                    worst = worst.max((det - ed).norm());
                }
            }
        }
    }
    println!("ferro worst abs deviation {worst:e}");
}

#[test]
fn domain_wall_three_way() {
    for m in 1..=8 {
        for big_n in 1..=3.min(m + 1) {
            for n in 0..=big_n {
                for beta in BETAS {
                    let b = Complex64::new(beta, 0.0);
                    let det = persistence_domain_wall(m, big_n, n, b).unwrap().value;
                    let spec = persistence_domain_wall_spectral(m, big_n, n, b).unwrap().value;
                    let ed = oracle_domain_wall(m, big_n, n, b).unwrap();
                    assert!(close(det, ed, 1e-9), "det M={m} N={big_n} n={n} b={beta}: {det} vs {ed}");
                    assert!(close(spec, ed, 1e-9), "spec M={m} N={big_n} n={n} b={beta}: {spec} vs {ed}");
                    assert!(det.im.abs() < 1e-9);
                }
            }
        }
    }
}

#[test]
fn complex_temperature() {
    let b = Complex64::new(0.7, 1.3);
    for (m, big_n, n) in [(7, 2, 2), (6, 3, 1), (5, 1, 3)] {
        let ed = oracle_ferro(m, big_n, n, b).unwrap();
        assert!(close(persistence_ferro(m, big_n, n, b).unwrap().value, ed, 1e-9));
        let ed = oracle_domain_wall(m, big_n, n.min(big_n), b).unwrap();
        assert!(close(persistence_domain_wall(m, big_n, n.min(big_n), b).unwrap().value, ed, 1e-9));
    }
}

#[test]
fn walkers_match_propagator() {
    for m in 1..=9 {
        for k in 0..=m {
            for l in 0..=m {
                let b = Complex64::new(0.8, 0.0);
                let mu_k = StrictPartition::new(vec![k as i64]).unwrap();
                let mu_l = StrictPartition::new(vec![l as i64]).unwrap();
                let ed = oracle_walker(m, &mu_k, &mu_l, b).unwrap();
                assert!(close(walker_amplitude(k, l, b, m), ed, 1e-9), "M={m} k={k} l={l}");
            }
        }
    }
    for m in 2..=7 {
        for big_n in 2..=3.min(m + 1) {
            let basis = SectorBasis::new(m, big_n).unwrap();
            let configs = basis.configurations();
            for a in configs.iter().step_by(3) {
                for c in configs.iter().step_by(2) {
                    let (a, c) = (StrictPartition::new(a.clone()).unwrap(), StrictPartition::new(c.clone()).unwrap());
                    let b = Complex64::new(1.1, 0.0);
                    let ed = oracle_walker(m, &a, &c, b).unwrap();
                    let w = walker_amplitude_multi(&a, &c, b, m).unwrap();
                    assert!((w - ed).norm() < 1e-12, "M={m} {:?} {:?}: {w} vs {ed}", a.parts(), c.parts());
                }
            }
        }
    }
}

#[test]
fn bethe_vectors_are_eigenvectors() {
    for m in 1..=8 {
        for big_n in 0..=3.min(m + 1) {
            let sector = Sector::new(m, big_n).unwrap();
            let mut from_bethe: Vec<f64> =
                enumerate_bethe_states(m, big_n).unwrap().iter().map(energy::<f64>).collect();
            from_bethe.sort_by(f64::total_cmp);
            for (a, b) in from_bethe.iter().zip(sector.eigenvalues()) {
                assert!((a - b).abs() < 1e-10, "M={m} N={big_n}");
            }
            for s in enumerate_bethe_states(m, big_n).unwrap() {
                assert!(eigen_residual(&s, &sector).unwrap() <= 1e-9);
            }
        }
    }
}

#[test]
fn norms_and_orthogonality() {
    for m in 1..=6 {
        for big_n in 1..=3.min(m + 1) {
            let basis = SectorBasis::new(m, big_n).unwrap();
            let states = enumerate_bethe_states(m, big_n).unwrap();
            for a in &states {
                let bra = build_state_vector(&a.v_inv_sq::<f64>(), &basis).unwrap();
                for b in &states {
                    let ket = build_state_vector(&b.u_sq::<f64>(), &basis).unwrap();
                    let direct = pair(&bra, &ket);
                    if a == b {
                        let nn = norm_squared::<f64>(a);
                        assert!((direct.re - nn).abs() < 1e-9 * nn);
                        let sp = scalar_product(&a.v_inv_sq::<f64>(), &a.u_sq::<f64>(), m);
                        assert!(sp.is_err() || (sp.unwrap().re - nn).abs() < 1e-9 * nn);
                    } else {
                        assert!(direct.norm() < 1e-9);
                    }
                }
            }
        }
    }
}

#[test]
fn completeness() {
    for m in 1..=6 {
        for big_n in 1..=2 {
            let g = bethe_gram(m, big_n).unwrap();
            assert!((g.determinant().norm() - 1.0).abs() < 1e-6, "M={m} N={big_n}");
        }
    }
}
