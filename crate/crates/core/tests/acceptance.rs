//! Acceptance gate: one test per criterion, each printing a single
//! PASS/FAIL line (run with `--nocapture` to see them on success).

use cusped::cusps::{cusp_shape, develop_cusp};
use cusped::equations::EquationSystem;
use cusped::experiments::{
    check_brunnian, first_order_derivative, run_isolation, FillSpec, ReportFormat, SolveReport,
};
use cusped::numerics::{omega, C};
use cusped::plane::{
    build_napoleon_tiling, napoleon_centers, render_svg_string, vertex_holonomy_product,
    HexagonTorus, LabeledTriangle, OctagonTiling,
};
use cusped::solver::{solve_complete, solve_filled_with_steps, SimplexAssignment};
use cusped::triangulation::{census, census_names, parse_triangulation, serialize_triangulation};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn criterion(n: usize, desc: &str, pass: bool) {
    println!("acceptance {n} ({desc}): {}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "acceptance criterion {n} failed: {desc}");
}

fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xacce_0000 + tag)
}

fn random_point(rng: &mut ChaCha8Rng, scale: f64) -> C {
    C::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

#[test]
fn criterion_1_napoleon_centers() {
    let mut rng = rng(1);
    let target = C::from_polar(1.0, std::f64::consts::PI / 3.0);
    let mut worst: f64 = 0.0;
    let mut tested = 0;
    while tested < 1000 {
        let t = LabeledTriangle::from_vertices(
            random_point(&mut rng, 10.0),
            random_point(&mut rng, 10.0),
            random_point(&mut rng, 10.0),
        )
        .unwrap();
        if t.degenerate {
            continue;
        }
        tested += 1;
        let (c1, c2, c3) = napoleon_centers(&t).unwrap();
        let mut ratio = (c2 - c1) / (c3 - c1);
        if t.orientation < 0 {
            ratio = ratio.conj();
        }
        worst = worst.max((ratio - target).norm());
    }
    criterion(1, "napoleon center ratio", worst < 1e-10);
}

#[test]
fn criterion_2_vertex_holonomy() {
    let mut rng = rng(2);
    let one = C::new(1.0, 0.0);
    let mut worst: f64 = 0.0;
    let mut tested = 0;
    while tested < 1000 {
        let z = random_point(&mut rng, 5.0);
        if z.norm() < 1e-3 || (z - one).norm() < 1e-3 {
            continue;
        }
        tested += 1;
        worst = worst.max((vertex_holonomy_product(z).unwrap() - one).norm());
    }
    criterion(2, "vertex holonomy product", worst < 1e-12);
}

#[test]
fn criterion_3_hexagon_torus_isolation() {
    let mut rng = rng(3);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let z = C::new(rng.gen_range(-0.5..1.5), rng.gen_range(0.2..1.5));
        let second = HexagonTorus::second_torus(z, omega()).unwrap();
        worst = worst.max((second.modulus().unwrap().reduced - omega()).norm());
        let w = C::new(rng.gen_range(-0.5..1.5), rng.gen_range(0.2..1.5));
        let first = HexagonTorus::first_torus(omega(), w).unwrap();
        worst = worst.max((first.modulus().unwrap().reduced - omega()).norm());
    }
    criterion(3, "hexagon-torus rigidity", worst < 1e-10);
}

#[test]
fn criterion_4_octagon_tiling() {
    let mut rng = rng(4);
    let square = C::new(0.0, 1.0);
    let mut worst_area: f64 = 0.0;
    let mut worst_modulus: f64 = 0.0;
    let mut all_match = true;
    for _ in 0..100 {
        let p = C::new(rng.gen_range(0.02..0.98), rng.gen_range(0.02..0.98));
        let tiling = OctagonTiling::new(p).unwrap();
        worst_area = worst_area.max((tiling.area() - 1.0).abs());
        all_match &= tiling.lattice_edge_matching(1e-10);
        let modulus = tiling.quotient_modulus().unwrap().reduced;
        worst_modulus = worst_modulus.max((modulus - square).norm());
    }
    criterion(
        4,
        "octagon area/matching/modulus",
        worst_area < 1e-12 && all_match && worst_modulus < 1e-10,
    );
}

#[test]
fn criterion_5_fig8_complete() {
    let tri = census("fig8").unwrap();
    let solved = solve_complete(&tri).unwrap();
    let z_err = solved
        .assignment
        .z
        .iter()
        .map(|z| (z - omega()).norm())
        .fold(0.0f64, f64::max);
    let vol_err = (solved.volume() - 2.029883212819).abs();
    let shape = cusp_shape(&develop_cusp(&tri, &solved, 0).unwrap()).unwrap();
    let shape_err = (shape.reduced - C::new(0.0, 2.0 * 3.0f64.sqrt())).norm();
    criterion(
        5,
        "fig8 complete structure",
        z_err < 1e-10 && vol_err < 1e-8 && shape_err < 1e-8,
    );
}

#[test]
fn criterion_6_napoleon_complete() {
    let tri = census("napoleon").unwrap();
    let solved = solve_complete(&tri).unwrap();
    let z_err = solved
        .assignment
        .z
        .iter()
        .map(|z| (z - omega()).norm())
        .fold(0.0f64, f64::max);
    let mut shape_err: f64 = 0.0;
    for c in 0..tri.cusps.len() {
        let shape = cusp_shape(&develop_cusp(&tri, &solved, c).unwrap()).unwrap();
        shape_err = shape_err.max((shape.reduced - omega()).norm());
    }
    // 18 regular ideal tetrahedra: 18 × 1.0149416064096536.
    let vol_err = (solved.volume() - 18.268948915373765).abs();
    criterion(
        6,
        "napoleon complete structure",
        tri.n_tet == 18 && z_err < 1e-10 && shape_err < 1e-10 && vol_err < 1e-7,
    );
}

#[test]
fn criterion_7_isolation_sweep() {
    let observe: Vec<String> =
        ["c2", "c3", "d1", "d2", "d3"].iter().map(|s| s.to_string()).collect();
    let mut pass = true;
    for (p, q) in [(4.0, 1.0), (5.0, 0.0), (6.0, 1.0), (7.0, 2.0), (8.0, 3.0)] {
        let fill = vec![FillSpec { cusp: "c1".to_string(), p, q }];
        let report = run_isolation("napoleon", &fill, &observe, 1e-9).unwrap();
        let delta = |label: &str| {
            report.shapes.iter().find(|s| s.cusp == label).unwrap().delta
        };
        let c_quiet = delta("c2") < 1e-9 && delta("c3") < 1e-9;
        let d_moved = ["d1", "d2", "d3"].iter().map(|l| delta(l)).fold(0.0f64, f64::max) > 1e-4;
        pass &= c_quiet && d_moved;
    }
    criterion(7, "isolation sweep on c1", pass);
}

#[test]
fn criterion_8_brunnian_verdicts() {
    let light = check_brunnian("napoleon", ["c1", "c2", "c3"], (5.0, 0.0), 1e-9, 1e-6).unwrap();
    let dark = check_brunnian("napoleon", ["d1", "d2", "d3"], (5.0, 0.0), 1e-9, 1e-6).unwrap();
    let mixed = check_brunnian("napoleon", ["c1", "c2", "d1"], (5.0, 0.0), 1e-9, 1e-6).unwrap();
    criterion(
        8,
        "brunnian verdicts",
        light.verdict && dark.verdict && !mixed.verdict,
    );
}

#[test]
fn criterion_9_first_order_isolation() {
    let c1_c2 = first_order_derivative("napoleon", "c1", "c2", 1e-3).unwrap();
    let c2_c1 = first_order_derivative("napoleon", "c2", "c1", 1e-3).unwrap();
    let c1_d1 = first_order_derivative("napoleon", "c1", "d1", 1e-3).unwrap();
    criterion(
        9,
        "first-order derivative norms",
        c1_c2.norm < 1e-6 && c2_c1.norm < 1e-6 && c1_d1.norm > 1e-3,
    );
}

#[test]
fn criterion_10_infrastructure() {
    // Parser round trip on the census.
    let mut round_trip = true;
    for name in census_names() {
        let tri = census(name).unwrap();
        let text = serialize_triangulation(&tri);
        let reparsed = parse_triangulation(&text).unwrap();
        round_trip &= serialize_triangulation(&reparsed) == text;
    }

    // Analytic Jacobian versus central finite differences.
    let mut rng = rng(10);
    let h = 1e-7;
    let mut jac_worst: f64 = 0.0;
    for name in ["fig8", "napoleon"] {
        let tri = census(name).unwrap();
        let system = EquationSystem::complete(&tri);
        for _ in 0..3 {
            let z: Vec<C> = (0..tri.n_tet)
                .map(|_| C::new(rng.gen_range(-0.5..1.5), rng.gen_range(0.3..1.5)))
                .collect();
            let jac = system.jacobian(&z);
            let base = SimplexAssignment::new(z.clone(), None);
            for t in 0..z.len() {
                for (dir, re) in [(C::new(h, 0.0), true), (C::new(0.0, h), false)] {
                    let mut zp = z.clone();
                    zp[t] += dir;
                    let mut zm = z.clone();
                    zm[t] -= dir;
                    let rp = system.residual(&SimplexAssignment::new(zp, Some(&base)).logs, 1.0);
                    let rm = system.residual(&SimplexAssignment::new(zm, Some(&base)).logs, 1.0);
                    for row in 0..rp.len() {
                        let fd = (rp[row] - rm[row]) / (2.0 * h);
                        let analytic = if re {
                            jac.get(row, t)
                        } else {
                            jac.get(row, t) * C::new(0.0, 1.0)
                        };
                        jac_worst =
                            jac_worst.max((fd - analytic).norm() / analytic.norm().max(1.0));
                    }
                }
            }
        }
    }

    // Continuation end point independent of the step count.
    let tri = census("fig8").unwrap();
    let fillings = vec![Some((5.0, 1.0))];
    let hint = solve_complete(&tri).unwrap();
    let coarse = solve_filled_with_steps(&tri, &fillings, Some(&hint), 8).unwrap();
    let fine = solve_filled_with_steps(&tri, &fillings, Some(&hint), 64).unwrap();
    let step_diff = coarse
        .assignment
        .z
        .iter()
        .zip(&fine.assignment.z)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0f64, f64::max);

    // Deterministic bytes: SVG and JSON across two independent runs.
    let svg = |_: ()| {
        render_svg_string(&build_napoleon_tiling(C::new(0.35, 0.45), 2).unwrap()).unwrap()
    };
    let json = |_: ()| {
        let tri = census("fig8").unwrap();
        let solved = solve_complete(&tri).unwrap();
        SolveReport::new(&tri, &solved, &[]).unwrap().render(ReportFormat::Json)
    };
    let deterministic = svg(()) == svg(()) && json(()) == json(());

    criterion(
        10,
        "infrastructure properties",
        round_trip && jac_worst < 1e-5 && step_diff < 1e-10 && deterministic,
    );
}
