use serde_json::{json, Value};

use fnarc::algebra::{Fp, Rational, Scalar, SeriesCtx};
use fnarc::format::{
    from_json, ArcFile, DeformationFile, FieldSpec, ModelFile, SolutionFile, TestRingFile,
    VarietyFile,
};
use fnarc::geometry::{
    check_arc, reduce_to_complete_intersection, select_minor, ArcCheck, FormalArc, MinorSelection,
    Variety, DEFAULT_SEARCH_CAP,
};
use fnarc::jets::{hs_universal_check, jet_presentation};
use fnarc::lifting::{lift_solution, oracle_bijection_check, oracle_enumerate, Verdict};
use fnarc::local::TestRing;
use fnarc::model::{build_model, diagnostics, required_precision};
use fnarc::Error;

use crate::{Failure, Opts, Outcome};

#[derive(Clone, Copy)]
enum Kind {
    Check,
    Model,
    Lift,
    Oracle,
    Jets,
}

pub struct Job {
    kind: Kind,
    variety: String,
    arc: Option<String>,
    solution: Option<String>,
    order: usize,
    test_ring: Option<String>,
}

impl Job {
    fn with(kind: Kind, variety: String, arc: Option<String>) -> Self {
        Job {
            kind,
            variety,
            arc,
            solution: None,
            order: 0,
            test_ring: None,
        }
    }

    pub fn check(variety: String, arc: String) -> Self {
        Self::with(Kind::Check, variety, Some(arc))
    }

    pub fn model(variety: String, arc: String) -> Self {
        Self::with(Kind::Model, variety, Some(arc))
    }

    pub fn lift(variety: String, arc: String, solution: String) -> Self {
        Job {
            solution: Some(solution),
            ..Self::with(Kind::Lift, variety, Some(arc))
        }
    }

    pub fn oracle(variety: String, arc: String) -> Self {
        Self::with(Kind::Oracle, variety, Some(arc))
    }

    pub fn jets(variety: String, order: usize) -> Self {
        Job {
            order,
            ..Self::with(Kind::Jets, variety, None)
        }
    }

    pub fn with_test_ring(self, test_ring: Option<String>) -> Self {
        Job { test_ring, ..self }
    }

    fn variety_file(&self) -> Result<VarietyFile, Failure> {
        Ok(from_json(&self.variety, "variety file")?)
    }

    pub fn file_field(&self) -> Result<FieldSpec, Failure> {
        Ok(self.variety_file()?.field)
    }

    fn test_ring(&self) -> Result<&'static TestRing, Failure> {
        match &self.test_ring {
            Some(src) => Ok(from_json::<TestRingFile>(src, "test ring file")?.to_ring()?),
            None => Ok(TestRing::dual_numbers()),
        }
    }

    fn run<F: Scalar>(&self, field: FieldSpec, opts: &Opts) -> Result<Outcome, Failure> {
        let x = self.variety_file()?.to_variety::<F>()?;
        if let Kind::Jets = self.kind {
            return jets(&x, self.order, field);
        }
        let arc_file: ArcFile = from_json(self.arc.as_deref().unwrap_or_default(), "arc file")?;
        let mut arc = arc_file.to_arc(&x)?;
        if matches!(self.kind, Kind::Check | Kind::Model) {
            if let Some(n) = opts.precision {
                if n > arc.precision() {
                    return Err(Failure::Input(format!(
                        "--precision {n} exceeds the arc precision {}",
                        arc.precision()
                    )));
                }
                arc = arc.truncate(n);
            }
        }
        let check = check_arc(&x, &arc)?;
        if !check.pass {
            if let Kind::Check = self.kind {
                return Ok(Outcome {
                    table: table(
                        "check",
                        &[("arc on X", "FAIL".into()), ("orders", orders(&check))],
                    ),
                    json: json!({ "arc": check, "pass": false }),
                    pass: false,
                });
            }
            return Err(Failure::Math(Error::NotASolution(format!(
                "the arc does not lie on X modulo t^{}",
                arc.precision()
            ))));
        }
        let prep = prepare(&x, &arc, opts)?;
        match self.kind {
            Kind::Check => Ok(check_outcome(&prep, check)),
            Kind::Model => model(&prep, &arc, opts, field),
            Kind::Lift => lift(
                &prep,
                &arc,
                opts,
                self.solution.as_deref().unwrap_or_default(),
                self.test_ring()?,
            ),
            Kind::Oracle => oracle(&x, &prep, &arc, opts, self.test_ring()?),
            Kind::Jets => unreachable!(),
        }
    }
}

macro_rules! prime_table {
    ($p:expr, $job:expr, $field:expr, $opts:expr; $($q:literal)*) => {
        match $p {
            $($q => $job.run::<Fp<$q>>($field, $opts),)*
            other => Err(Failure::Input(format!(
                "unsupported field size {other}: use a prime below 32 or 2147483647"
            ))),
        }
    };
}

pub fn dispatch(field: FieldSpec, job: &Job, opts: &Opts) -> Result<Outcome, Failure> {
    match field {
        FieldSpec::Rational => job.run::<Rational>(field, opts),
        FieldSpec::Prime { p } => prime_table!(p, job, field, opts;
            2 3 5 7 11 13 17 19 23 29 31 2147483647),
    }
}

fn table(title: &str, rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = format!("{title}\n");
    for (k, v) in rows {
        out += &format!("  {k:<width$}  {v}\n");
    }
    out
}

fn orders(check: &ArcCheck) -> String {
    check
        .orders
        .iter()
        .map(|o| o.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn names(v: &[String]) -> String {
    format!("{{{}}}", v.join(", "))
}

struct Prepared<F: Scalar> {
    x: Variety<F>,
    sel: MinorSelection,
    reduction: Option<Value>,
}

fn prepare<F: Scalar>(
    x: &Variety<F>,
    arc: &FormalArc<F>,
    opts: &Opts,
) -> Result<Prepared<F>, Failure> {
    let choice = opts.minor.as_deref();
    if x.is_complete_intersection() {
        let sel = select_minor(x, arc, choice, DEFAULT_SEARCH_CAP)?;
        return Ok(Prepared {
            x: x.clone(),
            sel,
            reduction: None,
        });
    }
    if !opts.reduce {
        return Err(Failure::Input(format!(
            "{} equations for codimension {}: pass --reduce to replace them by a complete intersection",
            x.equations().len(),
            x.codim()
        )));
    }
    let red =
        reduce_to_complete_intersection(x, arc, opts.seed, opts.max_trials, DEFAULT_SEARCH_CAP)?;
    let sel = match choice {
        Some(_) => select_minor(&red.variety, arc, choice, DEFAULT_SEARCH_CAP)?,
        None => red.certificate.clone(),
    };
    let mut report = serde_json::to_value(red.report()).expect("serializable");
    report["equations"] = json!(red
        .variety
        .equations()
        .iter()
        .map(|f| f.to_string())
        .collect::<Vec<_>>());
    Ok(Prepared {
        x: red.variety,
        sel,
        reduction: Some(report),
    })
}

fn check_outcome<F: Scalar>(prep: &Prepared<F>, check: ArcCheck) -> Outcome {
    let d = prep.sel.d;
    let mut rows = vec![("arc on X", "PASS".to_string()), ("orders", orders(&check))];
    if d == 0 {
        rows.push(("d", "d = 0: smooth case, model is a point".into()));
    } else {
        rows.push(("d", d.to_string()));
    }
    rows.push(("minor", names(&prep.sel.eliminated_names)));
    if let Some(r) = &prep.reduction {
        rows.push(("reduction trials", r["trials"].to_string()));
    }
    let mut json = json!({
        "arc": check,
        "pass": true,
        "d": d,
        "minor": prep.sel.eliminated_names,
        "smooth": d == 0,
    });
    if let Some(r) = &prep.reduction {
        json["reduction"] = r.clone();
    }
    Outcome {
        json,
        table: table("check", &rows),
        pass: true,
    }
}

fn model<F: Scalar>(
    prep: &Prepared<F>,
    arc: &FormalArc<F>,
    opts: &Opts,
    field: FieldSpec,
) -> Result<Outcome, Failure> {
    let out = build_model(&prep.x, arc, &prep.sel, opts.e)?;
    let m = out.model();
    let diag = diagnostics(m);
    let file = ModelFile::new(field, m, &diag);
    let mut rows = vec![
        (
            "d",
            if m.d() == 0 {
                "d = 0: smooth case, model is a point".into()
            } else {
                m.d().to_string()
            },
        ),
        ("e", m.e().to_string()),
        ("minor", names(&m.selection().eliminated_names)),
        ("unknowns", m.num_unknowns().to_string()),
        ("equations", m.equations().len().to_string()),
        ("jacobian rank", diag.jacobian_rank.to_string()),
        ("tangent dim", diag.tangent_dim.to_string()),
    ];
    if let Some((lo, hi)) = diag.bounds {
        rows.push(("dim bounds", format!("[{lo}, {hi}]")));
    }
    let mut json = serde_json::to_value(&file).expect("serializable");
    if let Some(r) = &prep.reduction {
        json["reduction"] = r.clone();
    }
    Ok(Outcome {
        json,
        table: table("model", &rows),
        pass: true,
    })
}

fn lift<F: Scalar>(
    prep: &Prepared<F>,
    arc: &FormalArc<F>,
    opts: &Opts,
    solution: &str,
    default_ring: &'static TestRing,
) -> Result<Outcome, Failure> {
    let out = build_model(&prep.x, arc, &prep.sel, opts.e)?;
    let m = out.model();
    let file: SolutionFile = from_json(solution, "solution file")?;
    let sol = file.parse(m, default_ring)?;
    let n = opts
        .precision
        .unwrap_or(10.max(required_precision(m.d(), m.e())));
    let comps = lift_solution(m, &sol.ring, &sol.values, sol.xi.as_deref(), None, n)?;
    let sctx = SeriesCtx {
        ring: sol.ring,
        precision: n,
    };
    let verified = prep
        .x
        .equations()
        .iter()
        .all(|f| f.eval(&sctx, &comps).is_zero_to_precision());
    if !verified {
        return Err(Failure::Math(Error::NoConvergence {
            iterations: sol.ring.class(),
        }));
    }
    let file = DeformationFile::new(prep.x.ring(), sol.ring, &comps, verified);
    Ok(Outcome {
        json: serde_json::to_value(&file).expect("serializable"),
        table: table(
            "lift",
            &[
                ("test ring", sol.ring.describe()),
                ("precision", n.to_string()),
                ("p = 0 mod t^N", "PASS".into()),
            ],
        ),
        pass: true,
    })
}

fn oracle<F: Scalar>(
    original: &Variety<F>,
    prep: &Prepared<F>,
    arc: &FormalArc<F>,
    opts: &Opts,
    ring: &'static TestRing,
) -> Result<Outcome, Failure> {
    if F::CHARACTERISTIC == 0 {
        return Err(Failure::Input(
            "the oracle enumerates over a finite field: pass --field p=<prime>".into(),
        ));
    }
    let out = build_model(&prep.x, arc, &prep.sel, opts.e)?;
    let m = out.model();
    let n = opts
        .precision
        .unwrap_or(6.max(required_precision(m.d(), m.e())));
    let report = oracle_bijection_check(m, ring, n, opts.budget)?;
    let hs = hs_universal_check(original, opts.hs_order, ring, opts.budget)?;
    let pass = report.bijection == Verdict::Pass && hs.bijection;
    let verdict = |ok: bool| if ok { "PASS" } else { "FAIL" }.to_string();
    let mut rows = vec![
        (
            "test ring",
            format!("{} over {}", report.test_ring, report.field),
        ),
        (
            "jet order",
            format!(
                "{} (extended to {})",
                report.jet_order, report.extension_order
            ),
        ),
        ("model solutions", report.model_solutions.to_string()),
        ("free dims", report.free_dims.to_string()),
        ("extendable jets", report.jet_points_extendable.to_string()),
        ("bijection", verdict(report.bijection == Verdict::Pass)),
        (
            "jet round trip",
            format!("order {}: {}", hs.order, verdict(hs.bijection)),
        ),
    ];
    if opts.timings {
        rows.push(("elapsed", format!("{} ms", report.elapsed_ms)));
    }
    let mut oracle_json = serde_json::to_value(&report).expect("serializable");
    if !opts.timings {
        oracle_json
            .as_object_mut()
            .expect("object")
            .remove("elapsed_ms");
    }
    let mut json = json!({ "oracle": oracle_json, "jets": hs, "pass": pass });
    if opts.emit_solutions {
        let sols = oracle_enumerate(m, ring, opts.budget)?;
        json["solutions"] = json!(sols
            .iter()
            .map(|s| SolutionFile::from_values(m, ring, s))
            .collect::<Vec<_>>());
    }
    Ok(Outcome {
        json,
        table: table("oracle", &rows),
        pass,
    })
}

fn jets<F: Scalar>(x: &Variety<F>, m: usize, field: FieldSpec) -> Result<Outcome, Failure> {
    let pres = jet_presentation(x, m)?;
    let file = pres.to_file();
    let json = json!({
        "field": field,
        "variables": file.variables,
        "equations": file.equations,
        "order": file.order,
    });
    Ok(Outcome {
        table: table(
            "jets",
            &[
                ("order", m.to_string()),
                ("variables", file.variables.len().to_string()),
                ("equations", file.equations.len().to_string()),
            ],
        ),
        json,
        pass: true,
    })
}
