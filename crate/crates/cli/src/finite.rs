use orqi::finite::*;
use serde_json::{json, Value};

use crate::load::{self, label_set, one_input, relation};
use crate::report::Report;
use crate::{CliError, FiniteCmd, Opts};

fn family(g: &GroundSet, f: &[SubsetMask]) -> Vec<Vec<String>> {
    f.iter().map(|m| g.names(*m)).collect()
}

fn orqi_witness(g: &GroundSet, v: &OrqiViolation) -> Value {
    match *v {
        OrqiViolation::NotQuasiInvolution { set, double_image } => json!({
            "kind": "not_quasi_involution",
            "set": g.names(set),
            "double_image": g.names(double_image),
        }),
        OrqiViolation::NotOrderReversing { smaller, larger } => json!({
            "kind": "not_order_reversing",
            "smaller": g.names(smaller),
            "larger": g.names(larger),
        }),
    }
}

fn inclusion_witness(g: &GroundSet, w: &InclusionWitness) -> Value {
    json!({
        "set": g.names(w.set),
        "cover": family(g, &w.cover),
        "image": g.names(w.image),
        "cover_meet": g.names(w.cover_meet),
    })
}

fn set_arg<'a>(opts: &'a Opts, what: &str) -> Result<&'a str, CliError> {
    opts.set
        .as_deref()
        .ok_or_else(|| CliError::Usage(format!("--set is required ({what})")))
}

pub fn run(cmd: &FiniteCmd, opts: &Opts) -> Result<Report, CliError> {
    let inputs = opts.inputs(cmd.files());
    let mut r = Report::new();
    match cmd {
        FiniteCmd::Dual(_) => {
            let rel = relation(one_input(&inputs)?)?;
            let g = rel.ground();
            match &opts.set {
                Some(s) => {
                    let k = label_set(g, s)?;
                    r.set("set", g.names(k))
                        .set("dual", g.names(rel.c_dual(k)))
                        .set("envelope", g.names(rel.envelope(k)))
                        .set("closed", rel.is_closed(k));
                }
                None => {
                    r.set("table", rel.to_table()?);
                }
            }
        }
        FiniteCmd::Verify(_) => return verify(one_input(&inputs)?, opts),
        FiniteCmd::Image(_) => {
            let rel = relation(one_input(&inputs)?)?;
            let class = rel.image_class()?;
            r.set("size", class.len())
                .set("image_class", family(rel.ground(), &class));
        }
        FiniteCmd::Invariants(_) => {
            let rel = relation(one_input(&inputs)?)?;
            let g = rel.ground();
            match &opts.set {
                Some(s) => {
                    let k0 = label_set(g, s)?;
                    let k = maximal_almost_invariant(&rel, k0, None)?;
                    let x0 = x_zero(&rel);
                    r.set("seed_set", g.names(k0))
                        .set("x_zero", g.names(x0))
                        .set("almost_invariant", g.names(k))
                        .set("dual", g.names(rel.c_dual(k)))
                        .set("invariant", rel.c_dual(k) == k);
                }
                None => {
                    let c = classify(&rel)?;
                    r.set("x_zero", g.names(c.x_zero))
                        .set("kind", c.kind)
                        .set("sets", family(g, &c.invariant_sets));
                }
            }
        }
        FiniteCmd::Extend(_) => {
            let t: SubFamilyTransform = load::read_json(one_input(&inputs)?)?;
            match extend_from_subclass(&t)? {
                Extension::Relation(rel) => {
                    r.set("extendable", true).set("relation", rel);
                }
                Extension::NotExtendable { witness } => {
                    r.set("extendable", false)
                        .set("witness", inclusion_witness(t.ground(), &witness));
                    return Ok(r.violated(true));
                }
            }
        }
        FiniteCmd::Dualize(_) => {
            let rel = relation(one_input(&inputs)?)?;
            r.set("relation", dual_orqi(&rel));
        }
        FiniteCmd::Intersect(_) => {
            if inputs.is_empty() {
                return Err(CliError::Usage("intersect needs at least one input".into()));
            }
            let rels = inputs
                .iter()
                .map(|p| relation(p))
                .collect::<Result<Vec<_>, _>>()?;
            r.set("relation", intersect_orqis(&rels)?);
        }
        FiniteCmd::Restrict(_) => {
            let rel = relation(one_input(&inputs)?)?;
            let m0 = label_set(rel.ground(), set_arg(opts, "the subset to restrict to")?)?;
            r.set("relation", restrict(&rel, m0)?);
        }
    }
    Ok(r)
}

/// A relation is checked for symmetry, a table for the ORQI laws and the
/// round trip through its induced relation.
fn verify(path: &std::path::Path, opts: &Opts) -> Result<Report, CliError> {
    let raw: Value = load::read_json(path)?;
    let mut r = Report::new();
    if raw.get("rel").is_some() {
        let rel = match serde_json::from_value::<CostRelation>(raw) {
            Ok(rel) => rel,
            Err(e) => {
                let msg = e.to_string();
                if msg.contains("not symmetric") {
                    r.set("input", "relation")
                        .set("symmetric", false)
                        .set("witness", msg);
                    return Ok(r.violated(true));
                }
                return Err(CliError::Schema(format!("{}: {msg}", path.display())));
            }
        };
        r.set("input", "relation")
            .set("size", rel.len())
            .set("symmetric", true);
        if opts.exhaustive {
            let law = lattice_law_exhaustive(&rel.to_table()?)?;
            r.set("lattice_law", law.is_none());
            if let Some(f) = law {
                r.set("lattice_witness", family(rel.ground(), &f));
                return Ok(r.violated(true));
            }
        }
        return Ok(r);
    }
    let t: TransformTable = serde_json::from_value(raw)
        .map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))?;
    let g = t.ground();
    r.set("input", "table");
    if let OrqiVerdict::Violated(v) = is_orqi(&t) {
        r.set("orqi", false).set("witness", orqi_witness(g, &v));
        return Ok(r.violated(true));
    }
    let induced = induced_relation(&t)?;
    let roundtrip = induced.to_table()? == t;
    r.set("orqi", true)
        .set("induced_relation", &induced)
        .set("roundtrip", roundtrip);
    if opts.exhaustive {
        let law = lattice_law_exhaustive(&t)?;
        r.set("lattice_law", law.is_none());
        if let Some(f) = law {
            r.set("lattice_witness", family(g, &f));
            return Ok(r.violated(true));
        }
    }
    Ok(r.violated(!roundtrip))
}
