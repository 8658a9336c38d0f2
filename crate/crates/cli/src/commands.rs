use std::collections::BTreeMap;
use std::path::Path;

use kmotive::exact::{BiTruncatedPoly, TruncatedSeries};
use kmotive::fgl::{self, FglKind, FormalGroupLaw};
use kmotive::motives::{self, EulerTheory, GroupDescriptor, HeightQuery, RawGroupDescriptor};
use kmotive::rootsys::{
    build_root_datum, fundamental_group, k0_restriction_index, steinberg_rho, tits_table,
    weyl_elements, BrauerClass, DynkinType, RootDatum, TitsHomomorphism, WeylElement,
};
use kmotive::witt::{self, WittClass};
use serde_json::{json, Value};

use crate::error::{usage, CliError, EngineError};
use crate::{
    Command, FglCmd, GroupCmd, LawKind, MotiveCmd, RootsysCmd, TheoryArg, TitsCmd, WittCmd,
    WittOpts, MAX_DEGREE,
};

pub fn execute(cmd: &Command) -> Result<Value, CliError> {
    match cmd {
        Command::Fgl(c) => fgl_cmd(c),
        Command::Rootsys(c) => rootsys_cmd(c),
        Command::Tits(c) => tits_cmd(c),
        Command::Witt(c) => witt_cmd(c),
        Command::Motive(c) => motive_cmd(c),
        Command::Group(c) => group_cmd(c),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("engine types serialize")
}

// ---- fgl ----

fn resolve_degree(degree: Option<u16>, p: u64, n: u32) -> Result<usize, CliError> {
    if let Some(d) = degree {
        return Ok(d as usize);
    }
    let default = p.checked_pow(n).and_then(|q| q.checked_mul(2));
    match default {
        Some(d) if d <= u64::from(MAX_DEGREE) => Ok(d as usize),
        _ => Err(usage(format!(
            "default degree bound 2*{p}^{n} exceeds {MAX_DEGREE}; pass --degree"
        ))),
    }
}

fn law_terms(law: &BiTruncatedPoly) -> Value {
    law.sorted_terms()
        .into_iter()
        .map(|(e, c)| json!({"x": e[0], "y": e[1], "coeff": c.to_string()}))
        .collect()
}

fn series_terms(s: &TruncatedSeries) -> Value {
    s.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(d, c)| json!({"degree": d, "coeff": c.to_string()}))
        .collect()
}

fn law_json(f: &FormalGroupLaw) -> Value {
    json!({
        "law": to_json(&f.spec.kind),
        "degree": f.bound(),
        "terms": law_terms(&f.law),
    })
}

fn require<T: Copy>(v: Option<T>, flag: &str, what: &str) -> Result<T, CliError> {
    v.ok_or_else(|| usage(format!("--{flag} is required for {what}")))
}

fn fgl_cmd(cmd: &FglCmd) -> Result<Value, CliError> {
    Ok(match *cmd {
        FglCmd::BpLog { p, degree } => {
            let d = resolve_degree(degree, p, 1)?;
            let log = fgl::bp_log(p, d)?;
            json!({"p": p, "degree": d, "log": series_terms(&log)})
        }
        FglCmd::Bp { p, degree } => {
            let d = resolve_degree(degree, p, 1)?;
            law_json(&fgl::bp_fgl(p, d)?)
        }
        FglCmd::Morava { p, n, degree, mod_j } => {
            let d = resolve_degree(degree, p, n)?;
            let f = fgl::morava_fgl(p, n, d)?;
            if mod_j {
                let reduced = fgl::reduce_mod_j(&f.law, p, n)
                    .expect("morava_fgl verified p-integrality");
                json!({
                    "law": to_json(&f.spec.kind),
                    "degree": d,
                    "modulus": format!("(p, x^{0}, y^{0})", p.pow(n)),
                    "terms": law_terms(&reduced),
                    "matches_closed_form": fgl::agrees_with_mod_j(&f, p, n)?,
                })
            } else {
                law_json(&f)
            }
        }
        FglCmd::ModJ { p, n } => {
            let closed = fgl::morava_mod_j(p, n)?;
            json!({
                "law": to_json(&FglKind::Morava { p, n }),
                "modulus": format!("(p, x^{0}, y^{0})", p.pow(n)),
                "terms": law_terms(&closed),
            })
        }
        FglCmd::PSeries { p, n, degree } => {
            let d = resolve_degree(degree, p, n)?;
            let f = fgl::morava_fgl(p, n, d)?;
            let s = fgl::p_series(&f, p, d);
            let lead = fgl::leading_term_mod_p(&s, p);
            json!({
                "law": to_json(&f.spec.kind),
                "degree": d,
                "series": series_terms(&s),
                "leading_mod_p": lead.as_ref().map(|t| json!({"degree": t.degree, "coeff": t.coeff.to_string()})),
                "height_certified": lead.as_ref().is_some_and(|t| fgl::certifies_height(t, p, n)),
            })
        }
        FglCmd::Check { law, p, n, degree } => {
            let f = match law {
                LawKind::Additive => fgl::additive(resolve_degree(degree, 2, 2)?),
                LawKind::Multiplicative => fgl::multiplicative(resolve_degree(degree, 2, 2)?),
                LawKind::Bp => {
                    let p = require(p, "p", "the BP law")?;
                    fgl::bp_fgl(p, resolve_degree(degree, p, 1)?)?
                }
                LawKind::Morava => {
                    let p = require(p, "p", "the Morava law")?;
                    let n = require(n, "n", "the Morava law")?;
                    fgl::morava_fgl(p, n, resolve_degree(degree, p, n)?)?
                }
            };
            let report = f.check_axioms();
            json!({
                "law": to_json(&f.spec.kind),
                "degree": f.bound(),
                "unit": report.unit,
                "commutative": report.commutative,
                "associative": report.associative,
                "graded": report.graded,
                "all": report.all(),
            })
        }
    })
}

// ---- rootsys / tits ----

fn datum_of(s: &str) -> Result<RootDatum, CliError> {
    let t: DynkinType = s.parse()?;
    Ok(build_root_datum(t)?)
}

fn parse_list(s: &str, what: &str) -> Result<Vec<u64>, CliError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<u64>()
                .map_err(|_| usage(format!("invalid {what} entry `{}`", x.trim())))
        })
        .collect()
}

fn parse_word(s: &str) -> Result<Vec<u8>, CliError> {
    parse_list(s, "word")?
        .into_iter()
        .map(|i| u8::try_from(i).map_err(|_| usage(format!("reflection index {i} out of range"))))
        .collect()
}

fn word_string(w: &WeylElement) -> String {
    w.word.iter().map(u8::to_string).collect::<Vec<_>>().join(",")
}

fn rootsys_cmd(cmd: &RootsysCmd) -> Result<Value, CliError> {
    Ok(match cmd {
        RootsysCmd::Build { dynkin } => {
            let d = datum_of(dynkin)?;
            json!({
                "type": d.dynkin.to_string(),
                "rank": d.rank(),
                "cartan": d.cartan,
                "simple_roots": d.simple_roots,
                "fundamental_weights": d.fundamental_weights,
                "positive_roots": d.positive_roots,
                "positive_root_count": d.positive_roots.len(),
                "weyl_order": d.dynkin.weyl_order() as u64,
            })
        }
        RootsysCmd::Weyl { dynkin, cap, words } => {
            let d = datum_of(dynkin)?;
            let all = weyl_elements(&d, u128::from(cap.cap))?;
            let mut by_length: BTreeMap<usize, u64> = BTreeMap::new();
            for w in &all {
                *by_length.entry(w.length()).or_default() += 1;
            }
            let mut v = json!({
                "type": d.dynkin.to_string(),
                "order": all.len(),
                "longest_length": by_length.keys().last(),
                "length_counts": by_length.values().collect::<Vec<_>>(),
            });
            if *words {
                v["elements"] = all.iter().map(|w| Value::from(word_string(w))).collect();
            }
            v
        }
        RootsysCmd::Rho { dynkin, word, cap } => {
            let d = datum_of(dynkin)?;
            let elements = match word {
                Some(w) => vec![WeylElement::from_word(&d, &parse_word(w)?)?],
                None => weyl_elements(&d, u128::from(cap.cap))?,
            };
            let rows: Vec<Value> = elements
                .iter()
                .map(|w| json!({"word": word_string(w), "rho": steinberg_rho(&d, w)}))
                .collect();
            json!({"type": d.dynkin.to_string(), "weights": rows})
        }
        RootsysCmd::FundamentalGroup { dynkin } => {
            let d = datum_of(dynkin)?;
            let g = fundamental_group(&d);
            json!({
                "type": d.dynkin.to_string(),
                "orders": g.orders,
                "order": g.order(),
                "generator_weights": g.generator_weights.iter().map(|w| w.map(|i| i + 1)).collect::<Vec<_>>(),
                "representatives": g.representatives.iter()
                    .map(|(c, w)| json!({"class": c, "weight": w}))
                    .collect::<Vec<_>>(),
            })
        }
    })
}

fn beta_of(d: &RootDatum, beta: &crate::BetaArgs) -> Result<TitsHomomorphism, CliError> {
    let source = fundamental_group(d);
    let target = match &beta.target {
        Some(t) => parse_list(t, "target")?,
        None => source.orders.clone(),
    };
    let images: Vec<Vec<u64>> = match &beta.images {
        Some(s) => s
            .split(';')
            .map(|part| parse_list(part, "image"))
            .collect::<Result<_, _>>()?,
        None if beta.target.is_none() => (0..source.orders.len())
            .map(|i| (0..source.orders.len()).map(|j| u64::from(i == j)).collect())
            .collect(),
        None => return Err(usage("--images is required together with --target")),
    };
    let mut declared = BTreeMap::new();
    for entry in &beta.index {
        let (class, index) = entry
            .split_once('=')
            .ok_or_else(|| usage(format!("--index expects CLASS=INDEX, got `{entry}`")))?;
        let index = index
            .trim()
            .parse::<u64>()
            .map_err(|_| usage(format!("invalid index `{index}`")))?;
        declared.insert(parse_list(class, "class")?, index);
    }
    Ok(TitsHomomorphism::new(source, target, images, declared)?)
}

fn brauer_json(c: &BrauerClass) -> Value {
    json!({
        "element": c.element,
        "group": c.group,
        "exponent": c.exponent,
        "index": c.index,
        "trivial": c.is_trivial(),
    })
}

fn tits_cmd(cmd: &TitsCmd) -> Result<Value, CliError> {
    Ok(match cmd {
        TitsCmd::Table { dynkin, beta } => {
            let d = datum_of(dynkin)?;
            let b = beta_of(&d, beta)?;
            let table = tits_table(&d, &b)?;
            json!({
                "type": d.dynkin.to_string(),
                "target": b.target,
                "table": table.iter()
                    .map(|(i, c)| json!({"weight": format!("omega{i}"), "class": brauer_json(c)}))
                    .collect::<Vec<_>>(),
            })
        }
        TitsCmd::Index { dynkin, word, beta } => {
            let d = datum_of(dynkin)?;
            let b = beta_of(&d, beta)?;
            let w = WeylElement::from_word(&d, &parse_word(word)?)?;
            let rho = steinberg_rho(&d, &w);
            json!({
                "type": d.dynkin.to_string(),
                "word": word_string(&w),
                "rho": rho,
                "class": brauer_json(&b.class_of_weight(&rho)),
                "index": k0_restriction_index(&d, &w, &b),
            })
        }
    })
}

// ---- witt ----

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn form_text(form: &Option<String>, opts: &WittOpts) -> Result<String, CliError> {
    match (form, &opts.file) {
        (Some(f), None) => Ok(f.clone()),
        (None, Some(path)) => Ok(read_file(path)?.trim().to_string()),
        (Some(_), Some(_)) => Err(usage("give the form either inline or with --file, not both")),
        (None, None) => Err(usage("a form is required (inline or with --file)")),
    }
}

fn class_json(q: &WittClass) -> Value {
    json!({
        "class": q.entries().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "text": q.to_string(),
        "dimension_parity": q.dimension_parity(),
    })
}

fn witt_cmd(cmd: &WittCmd) -> Result<Value, CliError> {
    Ok(match cmd {
        WittCmd::Add { a, b, opts } | WittCmd::Mul { a, b, opts } => {
            if opts.file.is_some() {
                return Err(usage("--file is not supported for binary operations"));
            }
            let k = opts.k as usize;
            let x = witt::parse_class(a, k)?;
            let y = witt::parse_class(b, k)?;
            let r = if matches!(cmd, WittCmd::Add { .. }) {
                witt::witt_add(&x, &y)?
            } else {
                witt::witt_mul(&x, &y)?
            };
            class_json(&r)
        }
        WittCmd::Pfister { entries, opts } => {
            let k = opts.k as usize;
            let xs = entries
                .iter()
                .map(|e| witt::parse_square_class(e, k))
                .collect::<Result<Vec<_>, _>>()?;
            let s = witt::PfisterSymbol::new(xs)?;
            let mut v = class_json(&witt::pfister_class(k, &s)?);
            v["symbol"] = Value::from(s.to_string());
            v
        }
        WittCmd::E { form, n, opts } => {
            let q = witt::parse_class(&form_text(form, opts)?, opts.k as usize)?;
            let e = witt::e_invariant(&q, *n)?;
            json!({
                "n": n,
                "e": e.graded().get(n).cloned().unwrap_or_default(),
                "text": e.to_string(),
            })
        }
        WittCmd::Level { form, height, opts } => {
            let q = witt::parse_class(&form_text(form, opts)?, opts.k as usize)?;
            let h = height.unwrap_or(u32::from(opts.k));
            let levels = motives::quadric_split_levels(&q, h)?;
            json!({"i_level": levels.i_level, "split_heights": levels.split_heights})
        }
        WittCmd::Strip { form, opts } => {
            let k = opts.k as usize;
            let q = witt::parse_class(&form_text(form, opts)?, k)?;
            let steps = witt::strip_reconstruct(&q)?;
            let rebuilt = witt::reassemble(k, &steps)?;
            json!({
                "steps": steps.iter().map(|s| json!({
                    "degree": s.degree,
                    "pfisters": s.pfisters.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
                "iterations": steps.last().map_or(0, |s| s.degree),
                "reconstructs": rebuilt == q,
            })
        }
        WittCmd::NormForm { entries, opts } => {
            let k = opts.k as usize;
            let xs = entries
                .iter()
                .map(|e| witt::parse_square_class(e, k))
                .collect::<Result<Vec<_>, _>>()?;
            let (q, quadric) = witt::norm_form_class(k, &xs)?;
            let mut v = class_json(&q);
            v["quadric"] = to_json(&quadric);
            v
        }
    })
}

// ---- motives ----

fn motive_cmd(cmd: &MotiveCmd) -> Result<Value, CliError> {
    Ok(match *cmd {
        MotiveCmd::RostSplit { p, m, n, zero } => to_json(&motives::rost_split_status(p, m, n, !zero)?),
        MotiveCmd::Ideal { p, m, n, chow } => {
            let ideal = motives::ideal_i(p, m)?;
            let mut v = json!({
                "p": p,
                "m": m,
                "generators": ideal.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                "relations": ideal.relation_strings(),
            });
            let target = match (n, chow) {
                (Some(n), _) => Some(motives::SpecializationTarget::Morava(n)),
                (None, true) => Some(motives::SpecializationTarget::ChowLocal),
                (None, false) => None,
            };
            if let Some(t) = target {
                v["specialization"] = to_json(&motives::specialize_image(&ideal, t));
            }
            v
        }
        MotiveCmd::Milnor { dim } => {
            json!({"dim": dim, "milnor_number": motives::milnor_number_quadric(dim)?})
        }
        MotiveCmd::NuCheck { p, n, dim, milnor } => {
            let s = match milnor {
                Some(s) => s,
                None => motives::milnor_number_quadric(dim)?,
            };
            json!({
                "p": p,
                "n": n,
                "dim": dim,
                "milnor_number": s,
                "nu_variety": motives::nu_variety_check(p, n, dim, s)?,
            })
        }
        MotiveCmd::Euler { theory, p, n, dim, cellular, milnor, chi } => {
            let theory = match theory {
                TheoryArg::K0 => EulerTheory::K0,
                TheoryArg::Morava => EulerTheory::Morava {
                    p: require(p, "p", "Morava K-theory")?,
                    n: require(n, "n", "Morava K-theory")?,
                },
            };
            let x = motives::VarietyDescriptor {
                dim,
                cellular,
                milnor_number: milnor,
                holomorphic_euler: chi,
            };
            to_json(&motives::euler_char(theory, &x)?)
        }
    })
}

// ---- group ----

fn group_cmd(cmd: &GroupCmd) -> Result<Value, CliError> {
    match cmd {
        GroupCmd::Split { file, height, theory, p } => {
            let text = read_file(file)?;
            let raw: RawGroupDescriptor = serde_json::from_str(&text).map_err(|e| {
                EngineError::new("HypothesisViolation", format!("descriptor schema: {e}"))
            })?;
            let g = GroupDescriptor::from_raw(&raw)?;
            let query = match (height, theory) {
                (_, Some(TheoryArg::K0)) => HeightQuery::K0Integral,
                (Some(n), _) => HeightQuery::Morava(*n),
                (None, _) => return Err(usage("--height or --theory k0 is required")),
            };
            Ok(to_json(&motives::borel_split(&g, *p, query)?))
        }
    }
}
