use proptest::prelude::*;
use schrodinger_core::criteria::check_eq29;
use schrodinger_core::fortet::{extract_solution, sinkhorn_baseline, solve_fortet};
use schrodinger_core::gaussian::{discretize_gaussian, GaussianProblem};
use schrodinger_core::problem::{load_problem, save_problem, ProblemFormat};
use schrodinger_core::{validate_reduction, DiscreteProblem, FortetOperator, SolveOptions, Status};

fn normalized(w: Vec<f64>) -> Vec<f64> {
    let s: f64 = w.iter().sum();
    w.into_iter().map(|x| x / s).collect()
}

fn positive_problem() -> impl Strategy<Value = DiscreteProblem> {
    (1usize..7, 1usize..7).prop_flat_map(|(n, m)| {
        (
            proptest::collection::vec(proptest::collection::vec(0.05f64..2.0, m), n),
            proptest::collection::vec(0.1f64..1.0, n),
            proptest::collection::vec(0.1f64..1.0, m),
        )
            .prop_map(|(k, mu, nu)| DiscreteProblem::from_matrix(k, normalized(mu), normalized(nu)).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn finite_criterion_gives_positive_solution(p in positive_problem()) {
        let r = validate_reduction(&p).unwrap();
        let report = check_eq29(&r);
        prop_assume!(report.eq29_xy.finite || report.eq29_yx.finite);
        let op = FortetOperator::new(&r);
        let opts = SolveOptions { tol: 1e-13, ..SolveOptions::default() };
        let res = solve_fortet(&op, None, &opts).unwrap();
        prop_assert_eq!(res.status, Status::ConvergedPositive);
        let s = extract_solution(&op, &res.u_star).unwrap();
        prop_assert!(s.max_marginal_error() <= 1e-9, "{:?}", s);
        let sk = sinkhorn_baseline(&r, 1e-14, 100_000).unwrap();
        for (x, y) in s.pi.as_slice().iter().zip(sk.solution.pi.as_slice()) {
            prop_assert!((x - y).abs() <= 1e-9);
        }
    }

    #[test]
    fn transposed_problem_transposes_coupling(p in positive_problem()) {
        let solve = |q: &DiscreteProblem| {
            let r = validate_reduction(q).unwrap();
            sinkhorn_baseline(&r, 1e-14, 100_000).unwrap().solution
        };
        let s = solve(&p);
        let t = solve(&p.transposed().unwrap());
        prop_assert_eq!(t.pi.rows(), s.pi.cols());
        for i in 0..s.pi.rows() {
            for j in 0..s.pi.cols() {
                prop_assert!((s.pi.get(i, j) - t.pi.get(j, i)).abs() <= 1e-10);
            }
        }
        prop_assert!((s.rel_entropy - t.rel_entropy).abs() <= 1e-9);
    }

    #[test]
    fn json_and_csv_round_trip(p in positive_problem()) {
        let dir = tempfile::tempdir().unwrap();
        for (path, format) in [
            (dir.path().join("p.json"), ProblemFormat::Json),
            (dir.path().join("bundle"), ProblemFormat::CsvBundle),
        ] {
            save_problem(&p, &path, format).unwrap();
            prop_assert_eq!(&load_problem(&path, format).unwrap(), &p);
        }
    }
}

#[test]
fn gaussian_problem_round_trips_through_csv() {
    let gp = GaussianProblem::scalar(1.0, 2.0, 0.5).unwrap();
    let p = discretize_gaussian(&gp, 6.0, 21).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bundle");
    save_problem(&p, &path, ProblemFormat::CsvBundle).unwrap();
    assert_eq!(load_problem(&path, ProblemFormat::CsvBundle).unwrap(), p);
}

#[test]
fn dropped_points_are_reported_in_original_indices() {
    let p = DiscreteProblem::from_matrix(
        vec![vec![1.0, 2.0, 1.0], vec![3.0, 4.0, 1.0], vec![1.0, 1.0, 1.0]],
        vec![0.5, 0.0, 0.5],
        vec![0.25, 0.75, 0.0],
    )
    .unwrap();
    let r = validate_reduction(&p).unwrap();
    assert_eq!(r.x_index(), &[0, 2]);
    assert_eq!(r.y_index(), &[0, 1]);
    assert!(!r.is_unchanged());
    let op = FortetOperator::new(&r);
    let res = solve_fortet(
        &op,
        None,
        &SolveOptions {
            tol: 1e-13,
            ..SolveOptions::default()
        },
    )
    .unwrap();
    let s = extract_solution(&op, &res.u_star).unwrap();
    assert!(s.max_marginal_error() <= 1e-10);
}
