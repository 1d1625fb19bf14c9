//! One function per subcommand. Each returns the artifact text and whether
//! the mathematical checks it performs held.

use serde::Serialize;
use serde_json::{json, Value};
use wallcross::counting::{framed_count, joyce_epsilons, ss_stack_count, stability_diagram, wall_directions};
use wallcross::oracle::{brute_stack_count, self_stable_dims};
use wallcross::quiver::{DimVector, Quiver, Weight};
use wallcross::scattering::{cluster_initial, equivalent, is_consistent, ks_complete, ScatteringDiagram};
use wallcross::theta::{theta_via_counts, theta_via_path, theta_via_path_from, ExtSeries};
use wallcross::tseries::TruncSeries;
use wallcross::Rat;

use crate::config::{parse_dim, parse_ints, parse_weight, Command, Format, Method, RunConfig};
use crate::render::render_svg;
use crate::Failure;

pub struct Artifact {
    pub text: String,
    pub holds: bool,
}

impl Artifact {
    fn ok(text: String) -> Self {
        Artifact { text, holds: true }
    }
}

fn emit(format: Format, value: &Value, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => pretty(value),
        _ => text(),
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values serialize");
    s.push('\n');
    s
}

fn weight_json(w: &Weight) -> Value {
    json!(w.coords().iter().map(Rat::to_string).collect::<Vec<_>>())
}

fn series_json(s: &TruncSeries) -> Value {
    let terms: Vec<Value> = s.iter().map(|(d, c)| json!({ "d": d.coords(), "c": c.to_string() })).collect();
    json!({ "text": s.to_canonical_string(), "terms": terms })
}

fn ext_json(e: &ExtSeries) -> Value {
    json!({ "m": e.m(), "series": series_json(e.coeff()) })
}

pub fn completion(q: &Quiver, k: u32) -> Result<ScatteringDiagram, Failure> {
    Ok(ks_complete(&q.skew_form(), &cluster_initial(q, k), k)?)
}

fn diagram_text(d: &ScatteringDiagram) -> String {
    let mut out = format!("order {}\n", d.order());
    for w in d.to_json().walls {
        let cone = if w.cone.form == "hyperplane" {
            "whole hyperplane".to_string()
        } else {
            w.cone.data.iter().map(|s| format!("{}{:?}", if s.sign > 0 { "+" } else { "-" }, s.vector)).collect::<Vec<_>>().join(" ")
        };
        out.push_str(&format!("wall {:?} [{}]: {}\n", w.normal, cone, w.f));
    }
    out
}

pub fn run(cmd: &Command, q: &Quiver, cfg: &RunConfig) -> Result<Artifact, Failure> {
    let k = cfg.order;
    let r = q.rank();
    match cmd {
        Command::Complete(_) => {
            let d = completion(q, k)?;
            Ok(Artifact::ok(emit(cfg.format, &serde_json::to_value(d.to_json()).unwrap(), || diagram_text(&d))))
        }
        Command::Stability(_) => {
            let d = stability_diagram(q, k)?;
            Ok(Artifact::ok(emit(cfg.format, &serde_json::to_value(d.to_json()).unwrap(), || diagram_text(&d))))
        }
        Command::Theta { m, theta, method, basepoint, .. } => {
            let m = parse_ints(m, r, "--m")?;
            let theta = parse_weight(theta, r, "--theta")?;
            let start = basepoint.as_deref().map(|b| parse_weight(b, r, "--basepoint")).transpose()?;
            let via_path = || -> Result<ExtSeries, Failure> {
                let d = completion(q, k)?;
                Ok(match &start {
                    Some(s) => theta_via_path_from(&d, &m, s, &theta)?,
                    None => theta_via_path(&d, &m, &theta)?,
                })
            };
            let via_counts = || -> Result<ExtSeries, Failure> { Ok(theta_via_counts(q, &m, &theta, k)?) };
            let (path, counts) = match method {
                Method::Path => (Some(via_path()?), None),
                Method::Counts => (None, Some(via_counts()?)),
                Method::Both => (Some(via_path()?), Some(via_counts()?)),
            };
            let agree = match (&path, &counts) {
                (Some(a), Some(b)) => Some(a == b),
                _ => None,
            };
            let mut value = json!({ "order": k, "m": m, "theta": weight_json(&theta) });
            if let Some(p) = &path {
                value["path"] = ext_json(p);
            }
            if let Some(c) = &counts {
                value["counts"] = ext_json(c);
            }
            if let Some(a) = agree {
                value["agree"] = json!(a);
            }
            let text = emit(cfg.format, &value, || {
                let mut s = String::new();
                if let Some(p) = &path {
                    s.push_str(&format!("path:   {p}\n"));
                }
                if let Some(c) = &counts {
                    s.push_str(&format!("counts: {c}\n"));
                }
                if let Some(a) = agree {
                    s.push_str(if a { "agree\n" } else { "MISMATCH\n" });
                }
                s
            });
            Ok(Artifact { text, holds: agree != Some(false) })
        }
        Command::Joyce { theta, .. } => {
            let theta = parse_weight(theta, r, "--theta")?;
            let eps = joyce_epsilons(q, &theta, k)?;
            let one = Rat::from_integer(1.into());
            let mut rows = Vec::new();
            for (d, e) in &eps {
                let j = e.eval(&one)?;
                rows.push((d.clone(), e.to_string(), j));
            }
            let value = json!({
                "order": k,
                "theta": weight_json(&theta),
                "invariants": rows.iter().map(|(d, e, j)| json!({ "d": d.coords(), "epsilon": e, "J": j.to_string() })).collect::<Vec<_>>(),
            });
            Ok(Artifact::ok(emit(cfg.format, &value, || {
                rows.iter().map(|(d, e, j)| format!("J{d} = {j}    ε = {e}\n")).collect()
            })))
        }
        Command::Framed { m, theta, dim, .. } => {
            let m = parse_ints(m, r, "--m")?;
            if m.iter().any(|&c| c < 0) {
                return Err(Failure::Input("--m must lie in the positive cone".into()));
            }
            let mw = Weight::from_ints(&m);
            let theta = parse_weight(theta, r, "--theta")?;
            let dims = match dim {
                Some(d) => vec![parse_dim(d, r)?],
                None => {
                    let mut all = vec![DimVector::zero(r)];
                    all.extend(DimVector::all_positive(r, k as i64));
                    all
                }
            };
            let mut rows = Vec::new();
            for d in dims {
                let c = framed_count(q, &d, &mw, &theta)?;
                rows.push((d, c));
            }
            let value = json!({
                "m": m,
                "theta": weight_json(&theta),
                "counts": rows.iter().map(|(d, c)| json!({ "d": d.coords(), "K": c.to_string() })).collect::<Vec<_>>(),
            });
            Ok(Artifact::ok(emit(cfg.format, &value, || rows.iter().map(|(d, c)| format!("K{d} = {c}\n")).collect())))
        }
        Command::Walls(_) => {
            let walls = wall_directions(q, k)?;
            let value = json!({
                "order": k,
                "walls": walls
                    .iter()
                    .map(|w| json!({ "normal": w.normal.coords(), "dims": w.dims.iter().map(|d| d.coords().to_vec()).collect::<Vec<_>>() }))
                    .collect::<Vec<_>>(),
            });
            Ok(Artifact::ok(emit(cfg.format, &value, || {
                walls
                    .iter()
                    .map(|w| format!("{}: {}\n", w.normal, w.dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")))
                    .collect()
            })))
        }
        Command::Check(_) => {
            let cluster = completion(q, k)?;
            let consistent = is_consistent(&cluster)?.is_consistent();
            let stab = stability_diagram(q, k)?;
            let same = equivalent(&stab, &cluster)?;
            let value = json!({
                "order": k,
                "cluster_walls": cluster.walls().len(),
                "stability_walls": stab.walls().len(),
                "consistent": consistent,
                "equivalent": same,
            });
            let text = emit(cfg.format, &value, || {
                format!(
                    "order {k}\ncluster completion: {} walls, {}\nstability diagram: {} walls\n{}\n",
                    cluster.walls().len(),
                    if consistent { "consistent" } else { "INCONSISTENT" },
                    stab.walls().len(),
                    if same { "equivalent" } else { "NOT EQUIVALENT" }
                )
            });
            Ok(Artifact { text, holds: consistent && same })
        }
        Command::Oracle { dim, theta, self_stable, .. } => {
            let theta = match theta {
                Some(t) => parse_weight(t, r, "--theta")?,
                None => Weight::zero(r),
            };
            let counting = !q.has_potential() && q.is_acyclic();
            let mut holds = true;
            let mut counts = Vec::new();
            if let Some(d) = dim {
                let d = parse_dim(d, r)?;
                let recursion = if counting { Some(ss_stack_count(q, &d, &theta)?) } else { None };
                for &p in &cfg.primes {
                    let brute = brute_stack_count(q, &d, &theta, p, cfg.budget)?;
                    let predicted = recursion.as_ref().map(|c| c.eval(&Rat::from_integer(p.into()))).transpose()?;
                    let agree = predicted.as_ref().map(|v| *v == brute);
                    holds &= agree != Some(false);
                    counts.push(json!({
                        "prime": p,
                        "d": d.coords(),
                        "brute": brute.to_string(),
                        "recursion": predicted.map(|v| v.to_string()),
                        "agree": agree,
                    }));
                }
            }
            let mut stable = Vec::new();
            if *self_stable {
                for &p in &cfg.primes {
                    let dims = self_stable_dims(q, k as i64, p, cfg.budget)?;
                    stable.push(json!({ "prime": p, "dims": dims.iter().map(|d| d.coords().to_vec()).collect::<Vec<_>>() }));
                }
            }
            if dim.is_none() && !self_stable {
                return Err(Failure::Input("oracle needs --dim or --self-stable".into()));
            }
            // with relations, point counts of semistable loci say nothing about Euler numbers
            let value = json!({
                "theta": weight_json(&theta),
                "counts": counts,
                "self_stable": stable,
                "counts_determine_euler_numbers": counting,
            });
            let text = emit(cfg.format, &value, || {
                let mut s = String::new();
                for c in &counts {
                    let rec = c["recursion"].as_str().unwrap_or("n/a");
                    s.push_str(&format!("p = {} d = {}: enumeration {}, recursion {rec}\n", c["prime"], c["d"], c["brute"].as_str().unwrap_or("")));
                }
                for e in &stable {
                    s.push_str(&format!("p = {} self-stable: {}\n", e["prime"], e["dims"]));
                }
                s
            });
            Ok(Artifact { text, holds })
        }
        Command::Render(_) => {
            let d = completion(q, k)?;
            Ok(Artifact::ok(render_svg(&d, q)))
        }
    }
}
