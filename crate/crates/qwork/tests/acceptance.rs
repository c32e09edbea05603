//! End-to-end acceptance suite. Each test prints one PASS/FAIL line so a
//! full run doubles as a checklist; run with
//! `cargo test -p qwork --test acceptance -- --nocapture`.

use qwork::matrix::{identity, min_eigenvalue, tensor, trace_product, CMatrix, C64};
use qwork::nogo;
use qwork::process::{
    basis_state, builtin_process, exact_average_work, maximally_coherent_state, ProcessKind,
};
use qwork::schemes::{
    evaluate_povm_raw, lambda_max, qubit_lambda_closed_form, qubit_probabilities_closed_form,
    tpm_distribution, tpm_povm, two_copy_elements, two_copy_povm, work_operator_matrix,
    QubitLambda,
};
use qwork::stats::{jarzynski_check, linearity_test};
use qwork::sweep::default_alpha_grid;
use qwork::testing;
use qwork::{SchemeKind, Verdict};

fn check(name: &str, body: impl FnOnce() + std::panic::UnwindSafe) {
    let result = std::panic::catch_unwind(body);
    match &result {
        Ok(()) => println!("[acceptance] {name}: PASS"),
        Err(_) => println!("[acceptance] {name}: FAIL"),
    }
    if let Err(e) = result {
        std::panic::resume_unwind(e);
    }
}

#[test]
fn a1_single_copy_counterexample() {
    check("1 single-copy counterexample gap", || {
        let p = builtin_process(ProcessKind::CoherentSwap { eps: 0.0, eps_prime: 1.0 }).unwrap();
        let cert = nogo::single_copy_gap(&p);
        let gap = cert.gap.unwrap();
        assert!(
            (gap - 1.0 / 2f64.sqrt()).abs() <= 1e-9,
            "gap {gap} differs from 1/sqrt(2)"
        );
        // Diagonal parts of both operators match diag(-eps'/2, eps - eps'/2)
        // = diag(-1/2, -1/2) at eps = 0, eps' = 1.
        let x_tpm = cert.achievable_operator.unwrap();
        let x_req = cert.required_operator.unwrap();
        for (k, expect) in [(0usize, -0.5), (1usize, -0.5)] {
            assert!((x_tpm[(k, k)].re - expect).abs() <= 1e-12);
            assert!((x_req[(k, k)].re - expect).abs() <= 1e-12);
            assert!(x_tpm[(k, k)].im.abs() <= 1e-12);
            assert!(x_req[(k, k)].im.abs() <= 1e-12);
        }
    });
}

#[test]
fn a2_two_copy_coherent_qubit_probabilities() {
    check("2 two-copy probabilities on the coherent qubit", || {
        let p = builtin_process(ProcessKind::DftCyclic { dim: 2 }).unwrap();
        let plus = maximally_coherent_state(2).unwrap();

        let (povm, _) = two_copy_povm(&p).unwrap();
        let raw = evaluate_povm_raw(&povm, &plus).unwrap();
        let expect = [0.5, 0.0, 0.5, 0.0];
        for (o, e) in raw.iter().zip(expect) {
            assert!(
                (o.probability - e).abs() <= 1e-12,
                "two-copy p({}, {}) = {} vs {e}",
                o.i,
                o.j,
                o.probability
            );
        }

        let tpm = tpm_povm(&p).unwrap();
        let raw = evaluate_povm_raw(&tpm, &plus).unwrap();
        for o in &raw {
            assert!((o.probability - 0.25).abs() <= 1e-12);
        }
    });
}

#[test]
fn a3_dft_processes_have_unit_lambda_and_projective_elements() {
    check("3 dft processes: lambda = 1 and projective elements", || {
        for dim in 2..=8usize {
            let p = builtin_process(ProcessKind::DftCyclic { dim }).unwrap();
            let (povm, lr) = two_copy_povm(&p).unwrap();
            assert!((lr.lambda - 1.0).abs() <= 1e-10, "dim {dim}: lambda {}", lr.lambda);
            let w = p.unitary().matrix();
            for el in povm.elements() {
                let mut proj_i = CMatrix::zeros(dim, dim);
                proj_i[(el.i, el.i)] = C64::new(1.0, 0.0);
                let mut ejj = CMatrix::zeros(dim, dim);
                ejj[(el.j, el.j)] = C64::new(1.0, 0.0);
                let expect = tensor(&proj_i, &(w.adjoint() * ejj * w));
                assert!(
                    (&el.op - expect).norm() <= 1e-10,
                    "dim {dim}: element ({}, {})",
                    el.i,
                    el.j
                );
            }
        }
    });
}

#[test]
fn a4_qubit_closed_forms_match_the_solver() {
    check("4 qubit closed forms vs general solver", || {
        // 200 angles across (0, pi/2), avoiding the pi/4-grid boundaries by
        // half-step offset.
        for alpha in default_alpha_grid(200).unwrap() {
            let p = builtin_process(ProcessKind::RotationCyclic { alpha }).unwrap();
            let lr = lambda_max(&p);
            let closed = match qubit_lambda_closed_form(alpha) {
                QubitLambda::Constrained(v) => v.min(1.0),
                QubitLambda::Unconstrained => 1.0,
            };
            assert!(
                (lr.lambda - closed).abs() <= 1e-9,
                "alpha {alpha}: solver {} vs closed {closed}",
                lr.lambda
            );
        }

        // 50 seeded random qubit states, each probed at an angle in [0, pi/4].
        let mut rng = testing::rng(2024);
        for k in 0..50usize {
            let alpha = (k as f64 + 0.5) * std::f64::consts::FRAC_PI_4 / 50.0;
            let rho = testing::random_density(2, &mut rng);
            let p = builtin_process(ProcessKind::RotationCyclic { alpha }).unwrap();
            let (povm, _) = two_copy_povm(&p).unwrap();
            let raw = evaluate_povm_raw(&povm, &rho).unwrap();
            let closed = qubit_probabilities_closed_form(alpha, &rho).unwrap();
            for (o, c) in raw.iter().zip(closed) {
                assert!(
                    (o.probability - c).abs() <= 1e-10,
                    "alpha {alpha}, outcome ({}, {}): {} vs {c}",
                    o.i,
                    o.j,
                    o.probability
                );
            }
        }
    });
}

#[test]
fn a5_two_copy_average_identities() {
    check("5 two-copy average identities over random processes", || {
        let mut rng = testing::rng(501);
        for case in 0..100usize {
            let dim = 2 + case % 4; // d in 2..=5
            let p = testing::random_process(dim, &mut rng);
            let rho = testing::random_density(dim, &mut rng);
            let rho2 = tensor(rho.matrix(), rho.matrix());
            let exact = exact_average_work(&p, &rho).unwrap();

            // At lambda = 1 (positivity ignored) the family's work operator
            // reproduces the exact average algebraically.
            let x1 = work_operator_matrix(&two_copy_elements(&p, 1.0), dim * dim);
            let mean1 = trace_product(&rho2, &x1).re;
            assert!(
                (mean1 - exact).abs() <= 1e-10,
                "case {case}: lambda=1 mean {mean1} vs exact {exact}"
            );

            // At the solver's lambda the mean interpolates affinely between
            // the TPM and exact averages.
            let lr = lambda_max(&p);
            let x_lam = work_operator_matrix(&two_copy_elements(&p, lr.lambda), dim * dim);
            let mean_lam = trace_product(&rho2, &x_lam).re;
            let x_tpm = work_operator_matrix(tpm_povm(&p).unwrap().elements(), dim);
            let mean_tpm = trace_product(rho.matrix(), &x_tpm).re;
            let interp = (1.0 - lr.lambda) * mean_tpm + lr.lambda * exact;
            assert!(
                (mean_lam - interp).abs() <= 1e-10,
                "case {case}: lambda {} mean {mean_lam} vs interpolation {interp}",
                lr.lambda
            );
        }
    });
}

#[test]
fn a6_individual_work_bound_certificates() {
    check("6 individual-work bound certificates", || {
        let c1 = nogo::individual_work_bound(1).unwrap();
        assert_eq!(c1.verdict, Verdict::NotCertified);
        for n in 2..=12 {
            let cert = nogo::individual_work_bound(n).unwrap();
            assert_eq!(cert.verdict, Verdict::CertifiedIncompatible, "N = {n}");
            assert!(cert.bound_lhs.unwrap() < cert.bound_rhs.unwrap());
        }
        let c2 = nogo::individual_work_bound(2).unwrap();
        assert!((c2.bound_lhs.unwrap() - 0.03125).abs() <= 1e-6);
        assert!((c2.bound_rhs.unwrap() - 0.0623776).abs() <= 1e-6);
    });
}

#[test]
fn a7_total_work_residuals() {
    check("7 total-work infeasibility residuals", || {
        // Maximally coherent cyclic qubit process: residual pinned to 2 by
        // the least-squares oracle; anything above 1e-3 certifies.
        let p = builtin_process(ProcessKind::DftCyclic { dim: 2 }).unwrap();
        let cert = nogo::total_work_infeasibility(&p, 2).unwrap();
        let residual = cert.gap.unwrap();
        assert!(residual > 1e-3);
        assert!((residual - 2.0).abs() <= 1e-9, "residual {residual}");
        assert_eq!(cert.verdict, Verdict::CertifiedIncompatible);

        // Diagonal-phase evolutions stay feasible.
        let h = qwork::HermitianOperator::from_diagonal(&[0.0, 1.0]);
        let phase = CMatrix::from_fn(2, 2, |r, c| {
            if r == c {
                C64::from_polar(1.0, 1.3 * r as f64)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let q = qwork::Process::cyclic(h, qwork::UnitaryOperator::new(phase).unwrap()).unwrap();
        let cert = nogo::total_work_infeasibility(&q, 2).unwrap();
        assert!(cert.gap.unwrap() <= 1e-10);
        assert_eq!(cert.verdict, Verdict::NotCertified);
    });
}

#[test]
fn a8_scheme_property_suite() {
    check("8 scheme property suite", || {
        // POVM axioms over 1000 seeded constructions (TPM and two-copy on
        // 500 random processes). WorkPovm construction itself validates
        // positivity and completeness; re-assert explicitly here.
        let mut rng = testing::rng(88);
        for case in 0..500usize {
            let dim = 2 + case % 4;
            let p = testing::random_process(dim, &mut rng);
            for povm in [tpm_povm(&p).unwrap(), two_copy_povm(&p).unwrap().0] {
                let total = povm.total_dim();
                let mut sum = CMatrix::zeros(total, total);
                for el in povm.elements() {
                    assert!(min_eigenvalue(&el.op).unwrap() >= -1e-10);
                    sum += &el.op;
                }
                assert!((sum - identity(total)).norm() <= 1e-10);
            }
        }

        // TPM linearity and the specific two-copy violation witness.
        let p = builtin_process(ProcessKind::DftCyclic { dim: 2 }).unwrap();
        let plus = maximally_coherent_state(2).unwrap();
        let zero = basis_state(0, 2).unwrap();
        let dev = linearity_test(SchemeKind::Tpm, &p, &plus, &zero, 0.5).unwrap();
        assert!(dev <= 1e-12, "TPM linearity deviation {dev}");
        let dev = linearity_test(SchemeKind::TwoCopy, &p, &plus, &zero, 0.5).unwrap();
        assert!((dev - 1.0 / 16.0).abs() <= 1e-10, "witness {dev}");

        // Jarzynski identity over 100 seeded (H, H', U, beta) tuples.
        let mut rng = testing::rng(99);
        for case in 0..100usize {
            let dim = 2 + case % 4;
            let p = testing::random_process(dim, &mut rng);
            let beta = 3.0 * (case as f64 + 1.0) / 100.0;
            let (lhs, rhs) = jarzynski_check(&p, beta).unwrap();
            assert!((lhs - rhs).abs() <= 1e-12, "case {case}: {lhs} vs {rhs}");
        }

        // TPM distribution mean equals the exact average on states diagonal
        // in the initial energy eigenbasis.
        let mut rng = testing::rng(123);
        for case in 0..100usize {
            let dim = 2 + case % 4;
            let p = testing::random_process(dim, &mut rng);
            let rho = testing::random_diagonal_density(p.initial_basis(), &mut rng);
            let d = tpm_distribution(&p, &rho).unwrap();
            let exact = exact_average_work(&p, &rho).unwrap();
            assert!((d.mean() - exact).abs() <= 1e-12, "case {case}");
        }
    });
}
