mod common;

use std::f64::consts::SQRT_2;

use common::disk;
use orqi::geometry::*;
use orqi::Error;
use proptest::prelude::*;

fn square() -> PointSet {
    PointSet::from_rows(&[[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]]).unwrap()
}

fn circle(r: f64, m: usize) -> PointSet {
    DirectionGrid::circle(m)
        .points()
        .map(|u| u.iter().map(|v| r * v).collect())
        .unwrap()
}

fn plane_grid(r: f64, n: usize) -> Grid {
    Grid::cube(2, -r, r, n)
}

#[test]
fn polar_of_square_is_the_cross_polytope() {
    let p = polar(&square()).unwrap();
    let cross = MembershipOracle::new(2, |y| 1.0 - y[0].abs() - y[1].abs());
    let grid = plane_grid(1.5, 101);
    let a = agreement(&p, &cross, &grid, 1e-9 * grid.scale());
    assert_eq!(a.agree, a.compared, "{a:?}");
}

#[test]
fn polar_drops_zero_and_dual_polar_is_emptied_by_it() {
    let mut p = square();
    p.push(&[0.0, 0.0]).unwrap();
    assert_eq!(polar(&p).unwrap().len(), 4);
    let d = dual_polar(&p).unwrap();
    assert!(!d.contains(&[100.0, 100.0]));
    assert!(matches!(polar(&PointSet::new(2)), Err(Error::Empty(_))));
}

#[test]
fn dual_polar_of_a_point_on_an_axis_is_a_halfspace() {
    for a in [0.5, 1.0, 3.0] {
        let k = dual_polar(&PointSet::from_rows(&[[0.0, 0.0, a]]).unwrap()).unwrap();
        for y in [
            [0.0, 0.0, 1.0 / a + 1e-9],
            [5.0, -3.0, 1.0 / a + 0.1],
            [0.0, 0.0, 1.0 / a - 1e-6],
            [2.0, 2.0, 0.0],
        ] {
            assert_eq!(k.contains(&y), a * y[2] >= 1.0, "a {a} y {y:?}");
        }
        let c = subclass_of(&k);
        assert!((c.distance().unwrap() - 1.0 / a).abs() < 1e-8);
        let u = c.direction().unwrap();
        assert!((u[2] - 1.0).abs() < 1e-8);
    }
}

#[test]
fn class_index_is_inverted_by_the_dual_polar() {
    // Segment {(s, a) : |s| <= L}: its dual polar is {a y₁ - L|y₀| >= 1},
    // nearest point (0, 1/a).
    for (a, l) in [(0.5, 2.0), (1.0, 1.0), (2.5, 0.3)] {
        let seg = PointSet::from_rows(
            &(0..=40)
                .map(|i| [-l + l * i as f64 / 20.0, a])
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(
            subclass_of(
                &polygon_region(&PointSet::from_rows(&[[-l, a], [l, a], [0.0, a + 1.0]]).unwrap())
                    .unwrap()
            )
            .distance()
            .map(|d| (d - a).abs() < 1e-8),
            Some(true)
        );
        let t = dual_polar(&seg).unwrap();
        match subclass_of(&t) {
            ClassMembership::Class {
                direction,
                distance,
            } => {
                assert!((distance - 1.0 / a).abs() < 1e-7, "{distance}");
                assert!(direction[0].abs() < 1e-7 && (direction[1] - 1.0).abs() < 1e-7);
            }
            other => panic!("{other:?}"),
        }
        let oracle = MembershipOracle::new(2, move |y| a * y[1] - l * y[0].abs() - 1.0);
        let grid = Grid::new(vec![-3.0, -1.0], vec![3.0, 4.0], 81);
        let agr = agreement(&t, &oracle, &grid, 1e-9 * grid.scale());
        assert_eq!(agr.agree, agr.compared);
    }
}

#[test]
fn subclass_degenerate_cases() {
    assert_eq!(
        subclass_of(&HalfspaceSet::whole(2)),
        ClassMembership::Degenerate(Degenerate::WholeSpace)
    );
    assert_eq!(
        subclass_of(&HalfspaceSet::empty(2)),
        ClassMembership::Degenerate(Degenerate::Empty)
    );
    assert_eq!(
        subclass_of(&polar(&square()).unwrap()),
        ClassMembership::Degenerate(Degenerate::ContainsOrigin)
    );
}

#[test]
fn closest_point_of_a_wedge() {
    // {y₁ >= 1 + y₀, y₁ >= 1 - y₀}: nearest point to (3, 0) is on the right edge.
    let mut k = HalfspaceSet::whole(2);
    k.push(Halfspace {
        normal: vec![-1.0, 1.0],
        offset: 1.0,
        sense: Sense::Ge,
    })
    .unwrap();
    k.push(Halfspace {
        normal: vec![1.0, 1.0],
        offset: 1.0,
        sense: Sense::Ge,
    })
    .unwrap();
    let p = closest_point(&k, &[3.0, 0.0]).unwrap();
    assert!(
        (p[0] - 1.0).abs() < 1e-7 && (p[1] - 2.0).abs() < 1e-7,
        "{p:?}"
    );
    let p = closest_point(&k, &[0.0, 0.0]).unwrap();
    assert!(p[0].abs() < 1e-7 && (p[1] - 1.0).abs() < 1e-7, "{p:?}");
}

#[test]
fn halfspace_json_schema() {
    let k = polar(&PointSet::from_rows(&[[2.0, 0.0]]).unwrap()).unwrap();
    let s = serde_json::to_string(&k).unwrap();
    assert_eq!(
        s,
        r#"{"dim":2,"constraints":[{"normal":[2.0,0.0],"offset":1.0,"sense":"<="}]}"#
    );
    assert_eq!(serde_json::from_str::<HalfspaceSet>(&s).unwrap(), k);
    let ps = PointSet::from_rows(&[[1.0, 2.0]]).unwrap();
    assert_eq!(
        serde_json::to_string(&ps).unwrap(),
        r#"{"points":[[1.0,2.0]]}"#
    );
}

#[test]
fn flower_dual_of_one_point_is_outside_a_ball() {
    for x in [[1.0, 0.0], [0.3, -0.4], [-2.0, 5.0]] {
        let r2 = x[0] * x[0] + x[1] * x[1];
        let z = [x[0] / r2, x[1] / r2];
        let f = flower_dual(&PointSet::from_rows(&[x]).unwrap()).unwrap();
        let grid = plane_grid(3.0, 61);
        grid.for_each(|y| {
            let direct = x[0] * y[0] + x[1] * y[1] < r2 * (y[0] * y[0] + y[1] * y[1]) / 2.0;
            let ball = ((y[0] - z[0]).powi(2) + (y[1] - z[1]).powi(2)).sqrt() > r2.sqrt().recip();
            let margin = (x[0] * y[0] + x[1] * y[1] - r2 * (y[0] * y[0] + y[1] * y[1]) / 2.0).abs();
            if margin > 1e-9 {
                assert_eq!(f.contains(y), direct, "x {x:?} y {y:?}");
                assert_eq!(ball, direct);
            }
        });
        // The origin is on the boundary and excluded by strictness.
        assert!(!f.contains(&[0.0, 0.0]));
    }
    let zero = flower_dual(&PointSet::from_rows(&[[0.0, 0.0]]).unwrap()).unwrap();
    assert!(!zero.contains(&[1.0, 1.0]));
}

#[test]
fn flower_invariant_set_is_the_outside_of_the_root_two_circle() {
    let mut gens = circle(SQRT_2, 2000);
    gens.extend(&circle(2.0, 400)).unwrap();
    let t = flower_dual(&gens).unwrap();
    let target = MembershipOracle::new(2, |y| norm(y) - SQRT_2);
    let grid = plane_grid(3.0, 201);
    let a = agreement(&t, &target, &grid, 1e-9 * grid.scale());
    assert!(a.fraction >= 0.995, "{a:?}");
}

#[test]
fn reuleaux_triangle_is_its_own_ball_intersection() {
    let (boundary, region) = reuleaux_triangle(1.0, 600);
    let t = ball_intersection(&boundary, 1.0).unwrap();
    let grid = plane_grid(1.0, 201);
    let a = agreement(&t, &region, &grid, 1e-9 * grid.scale());
    assert!(a.fraction >= 0.995, "{a:?}");
    // Boundary points lie at the right distance from the vertices.
    let r = 1.0 / 3f64.sqrt();
    for b in boundary.iter() {
        let far = (0..3)
            .map(|k| {
                let ang = std::f64::consts::FRAC_PI_2 + 2.0 * std::f64::consts::PI * k as f64 / 3.0;
                dist(b, &[r * ang.cos(), r * ang.sin()])
            })
            .fold(0.0, f64::max);
        assert!((far - 1.0).abs() < 1e-12);
    }
}

#[test]
fn neighborhood_complement_with_each_metric() {
    let p = PointSet::from_rows(&[[0.0, 0.0]]).unwrap();
    let pt = [0.8, 0.8];
    for (metric, inside) in [
        (Metric::Euclidean, true),
        (Metric::Manhattan, true),
        (Metric::Chebyshev, false),
    ] {
        let k = neighborhood_complement(&p, 1.0, metric).unwrap();
        assert_eq!(k.contains(&pt), inside);
    }
    let custom = Metric::Custom(std::sync::Arc::new(|a: &[f64], b: &[f64]| {
        10.0 * dist(a, b)
    }));
    assert!(neighborhood_complement(&p, 1.0, custom)
        .unwrap()
        .contains(&[0.2, 0.0]));
    assert!(neighborhood_complement(&p, 0.0, Metric::Euclidean).is_err());
}

#[test]
fn reciprocal_of_a_ball_is_the_reciprocal_ball() {
    for r in [0.5, 2.0] {
        let k = reciprocal(&circle(r, 720), &DirectionGrid::circle(720)).unwrap();
        let grid = plane_grid(2.5, 151);
        let a = agreement(&k, &disk(1.0 / r), &grid, 1e-9 * grid.scale());
        assert!(a.fraction > 0.998, "{a:?}");
    }
}

#[test]
fn reciprocal_lies_inside_the_polar() {
    let pts = PointSet::from_rows(&[[1.0, 0.2], [-0.5, 1.0], [-0.3, -0.9], [0.8, -0.6]]).unwrap();
    let rec = reciprocal(&pts, &DirectionGrid::circle(1440)).unwrap();
    let pol = polar(&pts).unwrap();
    plane_grid(3.0, 121).for_each(|y| {
        if rec.contains(y) {
            assert!(pol.violation(y) < 1e-2, "{y:?}");
        }
    });
}

#[test]
fn half_mixture_of_polar_and_balls_is_the_reciprocal() {
    let pts = PointSet::from_rows(&[
        [1.0, 0.2],
        [-0.5, 1.0],
        [-0.3, -0.9],
        [0.8, -0.6],
        [0.0, 0.4],
    ])
    .unwrap();
    let rec = reciprocal(&pts, &DirectionGrid::circle(2880)).unwrap();
    let half = reciprocal_type(&pts, 0.5).unwrap();
    let grid = plane_grid(2.0, 161);
    let a = agreement(&rec, &half, &grid, 1e-9 * grid.scale());
    assert!(a.fraction > 0.995, "{a:?}");
}

#[test]
fn reciprocal_type_endpoints() {
    let pts = square();
    let one = reciprocal_type(&pts, 1.0).unwrap();
    let pol = polar(&pts).unwrap();
    let zero = reciprocal_type(&pts, 0.0).unwrap();
    let grid = plane_grid(1.5, 61);
    let a = agreement(&one, &pol, &grid, 1e-9 * grid.scale());
    assert_eq!(a.agree, a.compared);
    // λ = 0 gives the ball of radius 1/max|x|.
    let b = agreement(&zero, &disk(1.0 / SQRT_2), &grid, 1e-9 * grid.scale());
    assert_eq!(b.agree, b.compared);
    assert!(reciprocal_type(&pts, 1.5).is_err());
}

#[test]
fn unconditional_dual_is_polarity_on_unconditional_bodies() {
    let pts = PointSet::from_rows(&[[2.0, 0.5], [0.5, 1.0]]).unwrap();
    let mut sym = PointSet::new(2);
    for p in pts.iter() {
        for (a, b) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
            sym.push(&[a * p[0], b * p[1]]).unwrap();
        }
    }
    let u = unconditional_dual(&pts).unwrap();
    let pol = polar(&sym).unwrap();
    let grid = plane_grid(2.0, 101);
    let a = agreement(&u, &pol, &grid, 1e-9 * grid.scale());
    assert_eq!(a.agree, a.compared);
    // The unit circle is mapped to the unit ball.
    let ball = unconditional_dual(&circle(1.0, 1440)).unwrap();
    let b = agreement(&ball, &disk(1.0), &grid, 1e-9 * grid.scale());
    assert!(b.fraction > 0.998, "{b:?}");
}

#[test]
fn star_dual_inverts_the_gauge() {
    let dirs = DirectionGrid::circle(360);
    let g: Vec<f64> = dirs
        .iter()
        .map(|u| 1.0 + 0.5 * u[0] + 0.25 * (3.0 * u[1]).sin())
        .collect();
    let a = RadialFunction::new(dirs.clone(), g.clone()).unwrap();
    let d = star_dual(&a);
    for (i, u) in dirs.iter().enumerate() {
        // Along u the set A reaches radius 1/g; its dual reaches g.
        let inside = |s: f64| [s * u[0], s * u[1]];
        assert!(a.contains(&inside(0.999 / g[i])) && !a.contains(&inside(1.001 / g[i])));
        assert!(d.contains(&inside(0.999 * g[i])) && !d.contains(&inside(1.001 * g[i])));
        // Definition: y ∈ A^c iff ⟨x, y⟩ <= 1 for x ∈ A on the ray through y.
        let y = inside(0.999 * g[i]);
        let x = inside(1.0 / g[i]);
        assert!(dot(&x, &y) <= 1.0);
    }
    for (u, v) in star_dual(&d).values().iter().zip(&g) {
        assert!((u - v).abs() < 1e-12);
    }
    let unbounded =
        RadialFunction::new(DirectionGrid::circle(4), vec![0.0, 1.0, 2.0, 1.0]).unwrap();
    assert_eq!(star_dual(&unbounded).values()[0], f64::INFINITY);
    assert!(unbounded.contains(&[1e9, 0.0]));
    assert!(RadialFunction::new(DirectionGrid::circle(4), vec![1.0; 3]).is_err());
}

#[test]
fn point_map_is_an_involution() {
    let z = [0.3, -2.0, 0.5];
    let f = j_point(&z).unwrap();
    assert_eq!(f, vec![0.6, -4.0, 2.0]);
    let back = j_point(&f).unwrap();
    for (a, b) in back.iter().zip(&z) {
        assert!((a - b).abs() < 1e-15);
    }
    assert!(j_point(&[1.0, 0.0]).is_none());
    assert!(j_point(&[1.0, -1.0]).is_none());
}

#[test]
fn tilde_j_of_the_hyperboloid_is_the_unit_disk() {
    let k = ProfileBody::k0().region();
    let jt = tilde_j(k.clone());
    let grid = plane_grid(1.5, 151);
    let a = agreement(&jt, &disk(1.0), &grid, 1e-9 * grid.scale());
    assert_eq!(a.agree, a.compared, "{a:?}");
    // J alone keeps only the upper half.
    let j = j_transform(k);
    assert!(j.contains(&[0.0, 0.5]) && !j.contains(&[0.0, -0.5]));
    assert!(jt.contains(&[0.999, 0.0]) && !jt.contains(&[1.001, 0.0]));
}

#[test]
fn polar_of_tilde_j_image_matches_dual_body() {
    let grid = plane_grid(1.5, 151);
    for body in [
        ProfileBody::k0(),
        ProfileBody::random(1),
        ProfileBody::random(2),
    ] {
        let a = tilde_j_polar_agreement(&body, &grid);
        assert!(a.fraction >= 0.995, "{a:?}");
    }
}

#[test]
fn named_profile_bodies_are_self_dual() {
    let grid = Grid::new(vec![-3.0, 0.05], vec![3.0, 4.0], 161);
    for (name, body) in [
        ("k0", ProfileBody::k0()),
        ("k1", ProfileBody::k1()),
        ("k2", ProfileBody::k2()),
    ] {
        let a = self_duality(&body, &grid);
        assert!(a.fraction >= 0.995, "{name}: {a:?}");
    }
    // A non-invariant body fails clearly.
    let a = self_duality(&ProfileBody::symmetric(2.0, 0.0).unwrap(), &grid);
    assert!(a.fraction < 0.99, "{a:?}");
}

#[test]
fn dual_profile_of_the_hyperboloid_is_itself() {
    let k0 = ProfileBody::k0();
    for y in [-3.0, -0.7, 0.0, 0.4, 2.5] {
        let v = k0.dual_profile_at(y);
        assert!((v - (y * y + 1.0_f64).sqrt()).abs() < 1e-4, "{y}: {v}");
    }
}

#[test]
fn constructed_invariant_sets_are_self_dual() {
    // Bodies inside {x >= 0, t >= 0} with nearest point (0, 1).
    let nodes = default_nodes();
    let bodies = [
        ProfileBody::new(
            |x| if x >= 0.0 { 1.0 + x * x } else { f64::INFINITY },
            nodes.clone(),
        )
        .unwrap(),
        ProfileBody::new(
            |x| {
                if x >= 0.0 {
                    (1.0 + 4.0 * x * x).sqrt()
                } else {
                    f64::INFINITY
                }
            },
            nodes.clone(),
        )
        .unwrap(),
        ProfileBody::k1(),
    ];
    let grid = Grid::new(vec![-3.0, 0.05], vec![3.0, 4.0], 161);
    for body in &bodies {
        let inv = construct_invariant(body).unwrap();
        let a = self_duality(&inv, &grid);
        assert!(a.fraction >= 0.99, "{a:?}");
    }
    assert!(construct_invariant(&ProfileBody::k0()).is_err());
    let near = ProfileBody::new(|x| if x >= 0.0 { 0.5 + x } else { f64::INFINITY }, nodes).unwrap();
    assert!(matches!(
        construct_invariant(&near),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn cone_like_checks() {
    let samples = {
        let mut s = PointSet::new(2);
        Grid::new(vec![-3.0, -3.0], vec![3.0, 3.0], 31).for_each(|x| s.push(x).unwrap());
        s
    };
    let k0 = ProfileBody::k0().region();
    assert_eq!(
        cone_like_check(&k0, &samples, &[1.5, 3.0]).unwrap(),
        ConeLikeVerdict::ConeLike
    );
    assert_eq!(
        cone_like_check(&disk(1.0), &samples, &[2.0]).unwrap(),
        ConeLikeVerdict::ContainsOrigin
    );
    let shifted = MembershipOracle::new(2, |y| 0.5 - dist(y, &[0.0, 2.0]));
    assert!(matches!(
        cone_like_check(&shifted, &samples, &[2.0]).unwrap(),
        ConeLikeVerdict::NotClosedUnderScaling { .. }
    ));
    assert!(cone_like_check(&k0, &samples, &[0.5]).is_err());
}

#[test]
fn subclass_of_an_oracle_region() {
    let dirs = DirectionGrid::circle(360);
    let tilted = MembershipOracle::new(2, |y| 0.6 * y[0] + 0.8 * y[1] - 2.0);
    match subclass_of_region(&tilted, &dirs, 1e6).unwrap() {
        ClassMembership::Class {
            direction,
            distance,
        } => {
            assert!((distance - 2.0).abs() < 1e-6, "{distance}");
            assert!((direction[0] - 0.6).abs() < 1e-4 && (direction[1] - 0.8).abs() < 1e-4);
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(
        subclass_of_region(&disk(1.0), &dirs, 10.0).unwrap(),
        ClassMembership::Degenerate(Degenerate::ContainsOrigin)
    );
    let nothing = MembershipOracle::new(2, |_| -1.0);
    assert_eq!(
        subclass_of_region(&nothing, &dirs, 10.0).unwrap(),
        ClassMembership::Degenerate(Degenerate::Empty)
    );
}

#[test]
fn polygon_and_hull() {
    let pts = PointSet::from_rows(&[
        [0.0, 0.0],
        [1.0, 0.0],
        [0.5, 0.2],
        [1.0, 1.0],
        [0.0, 1.0],
        [0.5, 1.0],
    ])
    .unwrap();
    let hull = convex_hull_2d(&pts).unwrap();
    assert_eq!(hull.len(), 4);
    let poly = polygon_region(&pts).unwrap();
    assert!(poly.contains(&[0.5, 0.5]) && !poly.contains(&[1.1, 0.5]));
    assert!(polygon_region(&PointSet::from_rows(&[[0.0, 0.0], [1.0, 1.0]]).unwrap()).is_err());
}

#[test]
fn sample_members_and_point_set_validation() {
    let grid = plane_grid(1.0, 21);
    let m = sample_members(&disk(0.5), &grid);
    assert!(m.iter().all(|y| norm(y) <= 0.5));
    assert!(!m.is_empty());
    assert!(matches!(
        PointSet::from_rows(&[[f64::NAN, 0.0]]),
        Err(Error::NonFinite)
    ));
    assert!(PointSet::from_flat(2, vec![1.0, 2.0, 3.0]).is_err());
    assert_eq!(DirectionGrid::default_for(2).unwrap().len(), 720);
    assert_eq!(DirectionGrid::default_for(3).unwrap().len(), 2000);
    assert!(DirectionGrid::default_for(5).is_err());
}

fn polygon_strategy() -> impl Strategy<Value = PointSet> {
    proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 3..10).prop_map(|v| {
        PointSet::from_rows(&v.iter().map(|(a, b)| [*a, *b]).collect::<Vec<_>>()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polarity_reverses_inclusion_and_is_a_quasi_involution(p in polygon_strategy(), extra in (-2.0f64..2.0, -2.0f64..2.0)) {
        let mut q = p.clone();
        q.push(&[extra.0, extra.1]).unwrap();
        let tp = polar(&p).unwrap();
        let tq = polar(&q).unwrap();
        let grid = plane_grid(3.0, 31);
        grid.for_each(|y| {
            if tq.contains(y) {
                assert!(tp.contains(y));
            }
        });
        // Generators lie in the double polar.
        let mut members = PointSet::new(2);
        grid.for_each(|y| if tp.contains(y) { members.push(y).unwrap() });
        for x in p.iter() {
            let bad = members.iter().any(|y| dot(x, y) > 1.0 + 1e-12);
            prop_assert!(!bad);
        }
    }

    #[test]
    fn dual_polar_images_are_cone_like(p in polygon_strategy()) {
        let t = dual_polar(&p).unwrap();
        let mut samples = PointSet::new(2);
        plane_grid(4.0, 25).for_each(|y| samples.push(y).unwrap());
        let v = cone_like_check(&t, &samples, &[1.0, 1.7, 5.0]).unwrap();
        prop_assert_ne!(v.clone(), ConeLikeVerdict::ContainsOrigin);
        prop_assert!(!matches!(v, ConeLikeVerdict::NotClosedUnderScaling { .. }), "{:?}", v);
    }

    #[test]
    fn class_index_inverts_for_random_cone_like_bodies(seed in 0u64..1000) {
        let body = ProfileBody::random(seed);
        let t = body.dual();
        let c = subclass_of(&t);
        // Closest point of the body is (0, 1), so the dual's is (0, 1) too.
        prop_assert!((c.distance().unwrap() - 1.0).abs() < 1e-6, "{:?}", c);
    }

    #[test]
    fn ball_intersection_reverses_inclusion(p in polygon_strategy(), eps in 1.0f64..4.0) {
        let small = ball_intersection(&p, eps).unwrap();
        let mut q = p.clone();
        q.push(&[0.0, 0.0]).unwrap();
        let large = ball_intersection(&q, eps).unwrap();
        plane_grid(4.0, 31).for_each(|y| {
            if large.contains(y) {
                assert!(small.contains(y));
            }
        });
    }
}

fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn polar_of_the_sampled_circle_is_the_disk_and_origin_gives_everything() {
    let p = polar(&circle(1.0, 1000)).unwrap();
    let grid = plane_grid(2.0, 161);
    let a = agreement(&p, &disk(1.0), &grid, 1e-9 * grid.scale());
    assert!(a.fraction >= 0.998, "{a:?}");
    let origin = polar(&PointSet::from_rows(&[[0.0, 0.0]]).unwrap()).unwrap();
    assert!(origin.is_empty());
    assert!(origin.contains(&[1e9, -1e9]));
}

#[test]
fn polar_scales_inversely() {
    let p = PointSet::from_rows(&[[1.0, 0.2], [-0.5, 1.0], [-0.3, -0.9], [0.8, -0.6]]).unwrap();
    let base = polar(&p).unwrap();
    for alpha in [0.5, 2.0, 4.0] {
        let scaled = polar(&p.map(|x| x.iter().map(|v| alpha * v).collect()).unwrap()).unwrap();
        plane_grid(3.0, 61).for_each(|y| {
            let shrunk: Vec<f64> = y.iter().map(|v| alpha * v).collect();
            assert_eq!(scaled.contains(y), base.contains(&shrunk));
        });
    }
}

#[test]
fn polar_triple_dual_of_the_square() {
    let once = polar(&square()).unwrap();
    let cross = PointSet::from_rows(&[[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]]).unwrap();
    let twice = polar(&cross).unwrap();
    let grid = plane_grid(2.0, 81);
    let a = agreement(
        &twice,
        &polygon_region(&square()).unwrap(),
        &grid,
        1e-9 * grid.scale(),
    );
    assert_eq!(a.agree, a.compared);
    // The vertices of TT(P) are those of P, so T(TT(P)) is T(P) again.
    let thrice = polar(&square()).unwrap();
    grid.for_each(|y| assert_eq!(thrice.contains(y), once.contains(y)));
}

/// Vertices of `{y : ⟨x, y⟩ >= 1, x in P}` in the plane, plus far points
/// along its extreme rays.
fn dual_polar_generators(p: &[[f64; 2]]) -> PointSet {
    let t = dual_polar(&PointSet::from_rows(p).unwrap()).unwrap();
    let mut out = PointSet::new(2);
    let mut vertices = Vec::new();
    for (i, a) in p.iter().enumerate() {
        for b in &p[i + 1..] {
            let det = a[0] * b[1] - a[1] * b[0];
            if det.abs() < 1e-12 {
                continue;
            }
            let v = [(b[1] - a[1]) / det, (a[0] - b[0]) / det];
            if t.violation(&v) < 1e-9 {
                vertices.push(v);
                out.push(&v).unwrap();
            }
        }
    }
    for x in p {
        for d in [[-x[1], x[0]], [x[1], -x[0]]] {
            if p.iter().all(|z| z[0] * d[0] + z[1] * d[1] >= -1e-12) {
                for v in &vertices {
                    out.push(&[v[0] + 1e6 * d[0], v[1] + 1e6 * d[1]]).unwrap();
                }
            }
        }
    }
    out
}

#[test]
fn dual_polar_double_dual_is_the_cone_like_hull() {
    use rand::Rng;
    let mut r = rng(11);
    let dirs = DirectionGrid::circle(200);
    for _ in 0..3 {
        let rows: Vec<[f64; 2]> = (0..5)
            .map(|_| [r.random_range(-1.0..1.0), r.random_range(0.5..2.0)])
            .collect();
        let p = PointSet::from_rows(&rows).unwrap();
        // Oracle: every halfspace ⟨·, u⟩ >= m with m > 0 that holds P.
        let mins: Vec<(Vec<f64>, f64)> = dirs
            .iter()
            .map(|u| {
                let m = p.iter().map(|x| dot(x, u)).fold(f64::INFINITY, f64::min);
                (u.to_vec(), m)
            })
            .filter(|(_, m)| *m > 0.0)
            .collect();
        let hull = MembershipOracle::new(2, move |y| {
            mins.iter()
                .map(|(u, m)| dot(y, u) - m)
                .fold(f64::INFINITY, f64::min)
        });
        let members = dual_polar_generators(&rows);
        let tt = dual_polar(&members).unwrap();
        let grid = plane_grid(3.0, 121);
        let a = agreement(&tt, &hull, &grid, 1e-9 * grid.scale());
        assert!(a.fraction >= 0.99, "{a:?}");
    }
}

#[test]
fn neighborhood_complement_twice_recovers_separated_points() {
    let p = PointSet::from_rows(&[[0.0, 0.0], [3.0, 0.0]]).unwrap();
    let t = neighborhood_complement(&p, 1.0, Metric::Euclidean).unwrap();
    let members = sample_members(&t, &Grid::new(vec![-4.0, -4.0], vec![7.0, 4.0], 221));
    let tt = neighborhood_complement(&members, 1.0, Metric::Euclidean).unwrap();
    assert!(tt.contains(&[0.0, 0.0]) && tt.contains(&[3.0, 0.0]));
    // Off P, the sampled TTP is confined to the grid spacing around P.
    let h = 11.0 / 220.0;
    Grid::new(vec![-2.9, -2.9], vec![5.9, 2.9], 89).for_each(|y| {
        if tt.contains(y) {
            let d = p.iter().map(|x| dist(x, y)).fold(f64::INFINITY, f64::min);
            assert!(d <= h, "{y:?}");
        }
    });
}

#[test]
fn ball_intersection_fixes_the_half_radius_ball_and_bounds_diameter() {
    use rand::Rng;
    let eps = 1.0;
    let t = ball_intersection(&circle(eps / 2.0, 720), eps).unwrap();
    let grid = plane_grid(1.0, 161);
    let a = agreement(&t, &disk(eps / 2.0), &grid, 1e-9 * grid.scale());
    assert!(a.fraction >= 0.998, "{a:?}");
    let mut r = rng(12);
    for _ in 0..5 {
        let rows: Vec<[f64; 2]> = (0..4)
            .map(|_| [r.random_range(-0.4..0.4), r.random_range(-0.4..0.4)])
            .collect();
        let t = ball_intersection(&PointSet::from_rows(&rows).unwrap(), eps).unwrap();
        let s = sample_members(&t, &plane_grid(1.5, 61));
        assert!(!s.is_empty());
        let diam = s
            .iter()
            .flat_map(|a| s.iter().map(move |b| dist(a, b)))
            .fold(0.0, f64::max);
        assert!(diam <= 2.0 * eps, "{diam}");
    }
}

#[test]
fn half_mixture_identity_in_three_dimensions() {
    use rand::Rng;
    let dirs = DirectionGrid::fibonacci_sphere(20_000);
    let mut r = rng(13);
    for _ in 0..1000 {
        let x: Vec<f64> = (0..3).map(|_| r.random_range(-1.0..1.0)).collect();
        let y: Vec<f64> = (0..3).map(|_| r.random_range(-1.0..1.0)).collect();
        let sup = dirs
            .iter()
            .map(|t| dot(&x, t) * dot(t, &y))
            .fold(f64::NEG_INFINITY, f64::max);
        let exact = 0.5 * (dot(&x, &y) + norm(&x) * norm(&y));
        assert!(sup <= exact + 1e-12);
        assert!(exact - sup <= 2e-3 * norm(&x) * norm(&y), "{x:?} {y:?}");
    }
}

#[test]
fn unconditional_dual_examples() {
    use rand::Rng;
    let mut r = rng(14);
    let rows: Vec<[f64; 2]> = (0..4)
        .map(|_| [r.random_range(-2.0..2.0), r.random_range(-2.0..2.0)])
        .collect();
    let u = unconditional_dual(&PointSet::from_rows(&rows).unwrap()).unwrap();
    for _ in 0..1000 {
        let y = [r.random_range(-2.0..2.0), r.random_range(-2.0..2.0)];
        for (a, b) in [(1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
            assert_eq!(u.contains(&y), u.contains(&[a * y[0], b * y[1]]));
        }
    }
    let e1 = unconditional_dual(&PointSet::from_rows(&[[1.0, 0.0]]).unwrap()).unwrap();
    for y in [[1.0, 50.0], [-1.0, -3.0], [0.2, 0.0]] {
        assert!(e1.contains(&y));
    }
    assert!(!e1.contains(&[1.01, 0.0]));
    // T({(1,1)}) is the cross-polytope; its dual is the square.
    let t = unconditional_dual(&PointSet::from_rows(&[[1.0, 1.0]]).unwrap()).unwrap();
    let members = sample_members(&t, &plane_grid(1.0, 201));
    let tt = unconditional_dual(&members).unwrap();
    let grid = plane_grid(2.0, 101);
    let a = agreement(
        &tt,
        &polygon_region(&square()).unwrap(),
        &grid,
        1e-9 * grid.scale(),
    );
    assert!(a.fraction >= 0.995, "{a:?}");
}

#[test]
fn constant_gauges() {
    let dirs = DirectionGrid::circle(64);
    let two = RadialFunction::new(dirs.clone(), vec![2.0; 64]).unwrap();
    assert!(star_dual(&two).values().iter().all(|v| *v == 0.5));
    let one = RadialFunction::new(dirs, vec![1.0; 64]).unwrap();
    assert_eq!(star_dual(&one), one);
}

#[test]
fn point_map_round_trips_random_points() {
    use rand::Rng;
    let mut r = rng(15);
    for _ in 0..1000 {
        let z = [
            r.random_range(-5.0..5.0),
            r.random_range(-5.0..5.0),
            r.random_range(0.01..5.0),
        ];
        let back = j_point(&j_point(&z).unwrap()).unwrap();
        for (a, b) in z.iter().zip(&back) {
            assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
        }
    }
}

#[test]
fn constructed_invariant_from_the_hyperboloid_half() {
    let half = ProfileBody::new(
        |x| {
            if x >= 0.0 {
                (1.0 + x * x).sqrt()
            } else {
                f64::INFINITY
            }
        },
        default_nodes(),
    )
    .unwrap();
    let inv = construct_invariant(&half).unwrap();
    let grid = Grid::new(vec![-3.0, 0.05], vec![3.0, 4.0], 161);
    let a = self_duality(&inv, &grid);
    assert!(a.fraction >= 0.995, "{a:?}");
}

#[test]
fn profile_from_samples_interpolates() {
    let b = ProfileBody::from_samples(vec![-1.0, 0.0, 2.0], vec![f64::INFINITY, 1.0, 3.0]).unwrap();
    assert_eq!(b.phi(0.0), 1.0);
    assert_eq!(b.phi(1.0), 2.0);
    assert_eq!(b.phi(2.0), 3.0);
    assert_eq!(b.phi(-0.5), f64::INFINITY);
    assert_eq!(b.phi(2.5), f64::INFINITY);
    assert_eq!(b.phi(-3.0), f64::INFINITY);
    assert!(b.region().contains(&[1.0, 2.5]) && !b.region().contains(&[1.0, 1.5]));
    assert!(ProfileBody::from_samples(vec![0.0, 0.0], vec![1.0, 1.0]).is_err());
    assert!(ProfileBody::from_samples(vec![0.0], vec![1.0, 1.0]).is_err());
}
