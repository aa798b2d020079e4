use std::f64::consts::SQRT_2;

use orqi::geometry::*;
use orqi::measure::derive_seed;

use crate::load::{self, named_points, numbers, one_input, Num};
use crate::report::{Report, Table};
use crate::{CliError, GeomCmd, Opts};

/// Self-duality and invariance checks pass at this grid agreement.
const AGREEMENT: f64 = 0.995;

fn generators(opts: &Opts, cmd: &GeomCmd) -> Result<PointSet, CliError> {
    let inputs = opts.inputs(cmd.files());
    match (&opts.body, inputs.as_slice()) {
        (Some(b), []) => named_points(b, opts.directions),
        (None, [p]) => load::points(p),
        (Some(_), _) => Err(CliError::Usage(
            "give either --body or an input file".into(),
        )),
        (None, _) => one_input(&inputs).and_then(load::points),
    }
}

fn directions(dim: usize, m: usize) -> Result<DirectionGrid, CliError> {
    match dim {
        2 => Ok(DirectionGrid::circle(m)),
        3 => Ok(DirectionGrid::fibonacci_sphere(m)),
        _ => Ok(DirectionGrid::default_for(dim)?),
    }
}

fn grid(opts: &Opts, dim: usize, default_per_axis: usize) -> Grid {
    let e = opts.extent;
    Grid::cube(dim, -e, e, opts.grid.unwrap_or(default_per_axis))
}

fn halfspaces(h: HalfspaceSet) -> Report {
    let mut t = Table::new(&[]);
    t.header = (0..h.dim).map(|i| format!("n{i}")).collect();
    t.header.extend(["offset".into(), "sense".into()]);
    for c in &h.constraints {
        let mut row: Vec<String> = c.normal.iter().map(f64::to_string).collect();
        row.push(c.offset.to_string());
        row.push(
            serde_json::to_value(c.sense)
                .expect("sense serializes")
                .as_str()
                .unwrap_or("")
                .into(),
        );
        t.push(row);
    }
    let mut r = Report::new();
    r.set("constraints", h);
    r.with_table(t)
}

fn points_report(key: &str, p: &PointSet) -> Report {
    let mut t = Table::new(&[]);
    t.header = (0..p.dim()).map(|i| format!("x{i}")).collect();
    for x in p.iter() {
        t.push(x.iter().map(f64::to_string).collect());
    }
    let mut r = Report::new();
    r.set("count", p.len()).set(key, p);
    r.with_table(t)
}

/// Grid points inside an oracle region.
fn members(opts: &Opts, region: &dyn Region) -> Report {
    let g = grid(opts, region.dim(), 61);
    let mut r = points_report("members", &sample_members(region, &g));
    r.set("grid", &g);
    r
}

fn agreement_report(name: &str, a: Agreement, g: &Grid) -> Report {
    let mut t = Table::new(&["check", "agree", "compared", "excluded", "fraction"]);
    t.push(vec![
        name.into(),
        a.agree.to_string(),
        a.compared.to_string(),
        a.excluded.to_string(),
        a.fraction.to_string(),
    ]);
    let mut r = Report::new();
    r.set("check", name)
        .set("agreement", a)
        .set("threshold", AGREEMENT)
        .set("grid", g);
    r.with_table(t).violated(a.fraction < AGREEMENT)
}

pub fn run(cmd: &GeomCmd, opts: &Opts) -> Result<Report, CliError> {
    Ok(match cmd {
        GeomCmd::Polar(_) => halfspaces(polar(&generators(opts, cmd)?)?),
        GeomCmd::Dualpolar(_) => halfspaces(dual_polar(&generators(opts, cmd)?)?),
        GeomCmd::Flower(_) if opts.invariant_check => {
            // {|x| >= √2} is generated by its boundary circle plus an outer one.
            let ring = |r: f64, m: usize| {
                DirectionGrid::circle(m)
                    .points()
                    .map(|u| u.iter().map(|v| r * v).collect())
                    .expect("finite")
            };
            let mut gens = ring(SQRT_2, 2000);
            gens.extend(&ring(2.0, 400))?;
            let t = flower_dual(&gens)?;
            let target = MembershipOracle::new(2, |y| norm(y) - SQRT_2);
            let g = grid(opts, 2, 201);
            agreement_report(
                "flower self-duality of {|x| >= sqrt 2}",
                agreement(&t, &target, &g, 1e-9 * g.scale()),
                &g,
            )
        }
        GeomCmd::Flower(_) => members(opts, &flower_dual(&generators(opts, cmd)?)?),
        GeomCmd::Reciprocal(_) => {
            let p = generators(opts, cmd)?;
            match opts.lambda {
                Some(l) => members(opts, &reciprocal_type(&p, l)?),
                None => halfspaces(reciprocal(&p, &directions(p.dim(), opts.directions)?)?),
            }
        }
        GeomCmd::Balls(_) => members(opts, &reciprocal_type(&generators(opts, cmd)?, 0.0)?),
        GeomCmd::Widthsets(_) => {
            let eps = opts.eps.unwrap_or(1.0);
            if opts.invariant_check {
                let (boundary, region) = reuleaux_triangle(eps, 600);
                let t = ball_intersection(&boundary, eps)?;
                let g = grid(opts, 2, 201);
                agreement_report(
                    "Reuleaux triangle fixed by ball intersection",
                    agreement(&t, &region, &g, 1e-9 * g.scale()),
                    &g,
                )
            } else {
                members(opts, &ball_intersection(&generators(opts, cmd)?, eps)?)
            }
        }
        GeomCmd::Jcheck(_) => jcheck(opts)?,
        GeomCmd::Unconditional(_) => members(opts, &unconditional_dual(&generators(opts, cmd)?)?),
        GeomCmd::Star(_) => star(opts, cmd)?,
    })
}

/// `-(J̃K)° = J̃(TK)` on five seeded random profile bodies.
fn jcheck(opts: &Opts) -> Result<Report, CliError> {
    if opts.dim != 2 {
        return Err(CliError::Usage(format!(
            "jcheck supports --dim 2 only, got {}",
            opts.dim
        )));
    }
    let g = match opts.grid {
        Some(n) => Grid::cube(2, -1.5, 1.5, n),
        None => Grid::cube(2, -1.5, 1.5, 151),
    };
    let mut t = Table::new(&["body_seed", "agree", "compared", "excluded", "fraction"]);
    let mut rows = Vec::new();
    let mut worst: f64 = 1.0;
    for i in 0..5 {
        let seed = derive_seed(opts.seed, i);
        let a = tilde_j_polar_agreement(&ProfileBody::random(seed), &g);
        worst = worst.min(a.fraction);
        t.push(vec![
            seed.to_string(),
            a.agree.to_string(),
            a.compared.to_string(),
            a.excluded.to_string(),
            a.fraction.to_string(),
        ]);
        rows.push(serde_json::json!({"body_seed": seed, "agreement": a}));
    }
    let mut r = Report::new();
    r.set("seed", opts.seed)
        .set("bodies", rows)
        .set("worst", worst)
        .set("threshold", AGREEMENT)
        .set("grid", &g);
    Ok(r.with_table(t).violated(worst < AGREEMENT))
}

#[derive(serde::Deserialize)]
struct StarInput {
    /// Gauge values on equally spaced directions of the circle.
    values: Vec<Num>,
}

fn star(opts: &Opts, cmd: &GeomCmd) -> Result<Report, CliError> {
    let inputs = opts.inputs(cmd.files());
    let s: StarInput = load::read_json(one_input(&inputs)?)?;
    let values = numbers(&s.values)?;
    let g = RadialFunction::new(DirectionGrid::circle(values.len()), values)?;
    let d = star_dual(&g);
    let mut t = Table::new(&["u0", "u1", "gauge", "dual_gauge"]);
    for ((u, a), b) in g.directions().iter().zip(g.values()).zip(d.values()) {
        t.push(vec![
            u[0].to_string(),
            u[1].to_string(),
            a.to_string(),
            b.to_string(),
        ]);
    }
    let enc = |v: &[f64]| -> Vec<serde_json::Value> {
        v.iter()
            .map(|x| match *x {
                x if x == f64::INFINITY => "inf".into(),
                x => x.into(),
            })
            .collect()
    };
    let mut r = Report::new();
    r.set("values", enc(d.values()));
    Ok(r.with_table(t))
}
