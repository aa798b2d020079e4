use std::path::Path;

use orqi::measure::*;

use crate::load::{self, named_region, named_section_body, profile_body};
use crate::report::{Report, Table};
use crate::{CliError, MeasureCmd, Opts};

fn body_name<'a>(opts: &'a Opts, cmd: &'a MeasureCmd) -> Result<String, CliError> {
    let inputs = opts.inputs(cmd.files());
    match (&opts.body, inputs.as_slice()) {
        (Some(b), []) => Ok(b.clone()),
        (None, [p]) => Ok(p.to_string_lossy().into_owned()),
        _ => Err(CliError::Usage(
            "give either --body or one input file".into(),
        )),
    }
}

fn estimate_row(t: &mut Table, name: &str, e: &McEstimate) {
    t.push(vec![
        name.into(),
        e.mean.to_string(),
        e.stderr.to_string(),
        e.n_samples.to_string(),
        e.seed.to_string(),
    ]);
}

pub fn run(cmd: &MeasureCmd, opts: &Opts) -> Result<Report, CliError> {
    let mut r = Report::new();
    match cmd {
        MeasureCmd::Gamma(_) => {
            let name = body_name(opts, cmd)?;
            let e = match named_region(&name) {
                Ok(region) => gaussian_measure(region.as_ref(), opts.samples, opts.seed)?,
                Err(_) if Path::new(&name).exists() => {
                    let body = load::read_json::<load::BodySpec>(Path::new(&name))?.build()?;
                    gaussian_measure(&body.region(), opts.samples, opts.seed)?
                }
                Err(e) => return Err(e),
            };
            r.set("rng", RNG_NAME);
            let mut t = Table::new(&["body", "mean", "stderr", "n_samples", "seed"]);
            estimate_row(&mut t, &name, &e);
            r.set("body", &name).set("estimate", e);
            Ok(r.with_table(t))
        }
        MeasureCmd::Bs(_) => {
            let name = body_name(opts, cmd)?;
            let body = profile_body(&name)?;
            r.set("body", &name)
                .set("seed", opts.seed)
                .set("samples", opts.samples);
            match bs_experiment(&body, opts.samples, opts.seed) {
                Ok(b) => {
                    let mut t = Table::new(&[
                        "gamma_K",
                        "gamma_TK",
                        "product",
                        "gamma_K0_sq",
                        "sigma",
                        "margin_sigma",
                        "holds",
                    ]);
                    t.push(vec![
                        b.gamma_k.to_string(),
                        b.gamma_tk.to_string(),
                        b.product.to_string(),
                        b.gamma_k0_sq.to_string(),
                        b.sigma.to_string(),
                        b.margin_sigma.to_string(),
                        b.holds.to_string(),
                    ]);
                    let holds = b.holds;
                    r.set("report", b);
                    Ok(r.with_table(t).violated(!holds))
                }
                // A body failing the symmetry precondition is a violation, not a usage error.
                Err(orqi::Error::Precondition(m)) => {
                    r.set("holds", false).set("precondition", m);
                    Ok(r.violated(true))
                }
                Err(e) => Err(e.into()),
            }
        }
        MeasureCmd::Prekopa(_) => {
            let name = body_name(opts, cmd)?;
            let (l, lp) = named_section_body(&name)?;
            let n = opts.heights.max(1);
            let heights: Vec<f64> = (1..=n).map(|i| i as f64 / n as f64).collect();
            let p = prekopa_condition_check(
                l.as_ref(),
                lp.as_ref(),
                &heights,
                opts.samples,
                opts.seed,
            )?;
            let mut t = Table::new(&["s", "t", "lhs", "rhs", "margin_sigma", "holds"]);
            for q in &p.pairs {
                t.push(vec![
                    q.s.to_string(),
                    q.t.to_string(),
                    q.lhs.to_string(),
                    q.rhs.to_string(),
                    q.margin_sigma.to_string(),
                    q.holds.to_string(),
                ]);
            }
            let holds = p.holds;
            r.set("body", &name).set("report", p);
            Ok(r.with_table(t).violated(!holds))
        }
    }
}
