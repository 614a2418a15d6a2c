//! Command implementations behind the `hocoh` binary. Every command returns a
//! JSON report whose content depends only on the problem file and flags.

pub mod spec;
pub mod text;

use std::path::PathBuf;
use std::sync::Arc;

use hocoh::cocycle::{alpha_map, h_q1_from_filtration, hom_a_space};
use hocoh::ext::{bar_oracle, BAR_ORACLE_BUDGET};
use hocoh::les::{
    long_exact_sequence, power_identification, quotient_ses, trivial_action_witness, vanishing_check,
    LongExactSequence,
};
use hocoh::{
    CandidateOrder, Field, FieldSpec, FiniteGroup, GammaModule, HigherCohomology, Matrix, NormalSubgroup, PrimeField,
    Rationals, ResolutionCache,
};
use serde_json::{json, Value};
use thiserror::Error;

use spec::{Problem, ProblemSpec};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
    #[error("no module named {0:?} in the problem file")]
    UnknownModule(String),
    #[error("missing --spec <path>")]
    MissingSpec,
    #[error(transparent)]
    Compute(#[from] hocoh::Error),
}

impl CliError {
    /// 1 for failed internal certificates, 2 for everything caused by input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compute(
                hocoh::Error::Certification(_) | hocoh::Error::NontrivialAction { .. } | hocoh::Error::AlphaNotAHom { .. },
            ) => 1,
            _ => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Info,
    Ideals,
    Cohom,
    H1,
    LesCheck,
    Verify,
    Selftest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Info => "info",
            Command::Ideals => "ideals",
            Command::Cohom => "cohom",
            Command::H1 => "h1",
            Command::LesCheck => "les-check",
            Command::Verify => "verify",
            Command::Selftest => "selftest",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Invocation {
    pub command: Command,
    pub spec: Option<PathBuf>,
    pub q_max: Option<usize>,
    pub p_max: Option<usize>,
    pub recheck: bool,
    pub module: Option<String>,
}

impl Invocation {
    pub fn new(command: Command) -> Self {
        Invocation {
            command,
            spec: None,
            q_max: None,
            p_max: None,
            recheck: false,
            module: None,
        }
    }
}

/// A finished report; `value` carries no timing information.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub value: Value,
    pub pass: bool,
}

pub fn execute(inv: &Invocation) -> Result<Report, CliError> {
    if inv.command == Command::Selftest {
        return selftest();
    }
    let path = inv.spec.as_ref().ok_or(CliError::MissingSpec)?;
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    execute_str(inv, &text)
}

/// Runs a command against the text of a problem file.
pub fn execute_str(inv: &Invocation, text: &str) -> Result<Report, CliError> {
    let spec = ProblemSpec::from_json(text)?;
    match spec.field_spec()? {
        FieldSpec::Rationals => run(inv, &spec, Rationals),
        FieldSpec::Prime(p) => run(inv, &spec, PrimeField::new(p)?),
    }
}

struct Options {
    q_max: usize,
    p_max: usize,
    recheck: bool,
    module: Option<String>,
}

fn run<F: Field>(inv: &Invocation, spec: &ProblemSpec, field: F) -> Result<Report, CliError> {
    let problem = Problem::build(spec, field)?;
    let opts = Options {
        q_max: inv.q_max.unwrap_or(problem.budgets.q_max),
        p_max: inv.p_max.unwrap_or(problem.budgets.p_max),
        recheck: inv.recheck,
        module: inv.module.clone(),
    };
    if opts.q_max == 0 {
        return Err(CliError::Invalid {
            path: "--q-max".into(),
            message: "must be at least 1".into(),
        });
    }
    if opts.p_max > hocoh::les::MAX_DEGREE {
        return Err(CliError::Invalid {
            path: "--p-max".into(),
            message: format!("must be at most {}", hocoh::les::MAX_DEGREE),
        });
    }
    let order = if opts.recheck {
        CandidateOrder::Reversed
    } else {
        CandidateOrder::Canonical
    };
    let engine = HigherCohomology::with_cache(
        problem.group.clone(),
        problem.field.clone(),
        problem.sigma.clone(),
        opts.q_max,
        Arc::new(ResolutionCache::new()),
        order,
    )?;
    let (result, pass) = match inv.command {
        Command::Info => (info(&problem), true),
        Command::Ideals => (ideals(&engine, &opts)?, true),
        Command::Cohom => per_module(&problem, &opts, |v| cohom(&engine, v, &opts))?,
        Command::H1 => per_module(&problem, &opts, |v| h1(&engine, v, &opts))?,
        Command::LesCheck => per_module(&problem, &opts, |v| les_check(&engine, v, &opts))?,
        Command::Verify => verify(&problem, &engine, &opts)?,
        Command::Selftest => unreachable!("handled before parsing"),
    };
    let value = json!({
        "command": inv.command.name(),
        "problem": problem.name,
        "field": problem.field.spec().to_string(),
        "q_max": opts.q_max,
        "p_max": opts.p_max,
        "recheck": opts.recheck,
        "spec": serde_json::to_value(spec).expect("spec serializes"),
        "result": result,
        "pass": pass,
        "version": env!("CARGO_PKG_VERSION"),
    });
    Ok(Report { value, pass })
}

fn perm_list(group: &FiniteGroup, idx: &[usize]) -> Value {
    Value::Array(idx.iter().map(|&i| json!(group.element(i).images())).collect())
}

fn info<F: Field>(p: &Problem<F>) -> Value {
    json!({
        "group_order": p.group.order(),
        "degree": p.group.degree(),
        "generators": perm_list(&p.group, p.group.generators()),
        "sigma_order": p.sigma.order(),
        "sigma_generators": perm_list(&p.group, p.sigma.generators()),
        "sigma_normal": true,
        "field": p.field.spec().to_string(),
        "characteristic": p.field.spec().characteristic(),
        "modules": p.modules.iter().map(|(n, m)| json!({"name": n, "dim": m.dim()})).collect::<Vec<_>>(),
    })
}

fn ideals<F: Field>(engine: &HigherCohomology<F>, opts: &Options) -> Result<Value, CliError> {
    let filt = engine.filtration();
    let mut rows = Vec::new();
    for q in 1..=opts.q_max {
        rows.push(json!({"q": q, "dim_j": engine.j(q)?.dim(), "n": engine.n(q)?}));
    }
    Ok(json!({
        "algebra_dim": engine.algebra().dim(),
        "dim_augmentation_ideal": filt.augmentation_ideal().dim(),
        "dim_sigma_ideal": filt.sigma_ideal().dim(),
        "stabilization_q": filt.stabilization_q(),
        "rows": rows,
    }))
}

/// Runs `f` for the selected module, or for every module in file order.
fn per_module<F: Field>(
    problem: &Problem<F>,
    opts: &Options,
    mut f: impl FnMut(&GammaModule<F>) -> Result<(Value, bool), CliError>,
) -> Result<(Value, bool), CliError> {
    let selected: Vec<(&String, &GammaModule<F>)> = match &opts.module {
        Some(name) => vec![(name, problem.module(name)?)],
        None => problem.modules.iter().map(|(n, m)| (n, m)).collect(),
    };
    let mut out = Vec::new();
    let mut pass = true;
    for (name, m) in selected {
        let (mut v, ok) = f(m)?;
        v["module"] = json!(name);
        v["pass"] = json!(ok);
        pass &= ok;
        out.push(v);
    }
    Ok((json!({ "modules": out }), pass))
}

fn grid<F: Field>(engine: &HigherCohomology<F>, v: &GammaModule<F>, opts: &Options) -> Result<Vec<Vec<usize>>, CliError> {
    Ok(hocoh::les::cohomology_grid(engine, v, opts.q_max, opts.p_max)?)
}

fn cohom<F: Field>(engine: &HigherCohomology<F>, v: &GammaModule<F>, opts: &Options) -> Result<(Value, bool), CliError> {
    let g = grid(engine, v, opts)?;
    let mut pass = true;
    let mut bar = Vec::new();
    for p in 0..=opts.p_max {
        let oracle = bar_oracle(v, p, BAR_ORACLE_BUDGET)?;
        let agree = oracle == g[0][p];
        pass &= agree;
        bar.push(json!({"p": p, "ext": g[0][p], "bar": oracle, "agree": agree}));
    }
    let mut cocycle = Vec::new();
    if opts.p_max >= 1 {
        for q in 1..=opts.q_max {
            let c = h_q1_from_filtration(engine.algebra(), engine.filtration(), q.min(engine.filtration().len()), v)?;
            let agree = c == g[q - 1][1];
            pass &= agree;
            cocycle.push(json!({"q": q, "ext": g[q - 1][1], "cocycle": c, "agree": agree}));
        }
    }
    Ok((
        json!({
            "dim": v.dim(),
            "grid": g,
            "q1_vs_bar": bar,
            "p1_vs_cocycle": cocycle,
        }),
        pass,
    ))
}

fn h1<F: Field>(engine: &HigherCohomology<F>, v: &GammaModule<F>, opts: &Options) -> Result<(Value, bool), CliError> {
    let mut rows = Vec::new();
    let mut pass = true;
    for q in 1..=opts.q_max {
        let qq = q.min(engine.filtration().len());
        let hom = hom_a_space(engine.algebra(), engine.filtration(), qq, v)?;
        let alpha = alpha_map(engine.filtration(), qq, v, &hom)?;
        let cocycle = hom.dim() - alpha.rank();
        let ext = engine.cohomology(v, q, 1)?.dim();
        pass &= cocycle == ext;
        rows.push(json!({
            "q": q,
            "hom_dim": hom.dim(),
            "alpha_rank": alpha.rank(),
            "cocycle": cocycle,
            "ext": ext,
            "agree": cocycle == ext,
        }));
    }
    Ok((json!({ "dim": v.dim(), "rows": rows }), pass))
}

fn matrix_value<F: Field>(m: &Matrix<F>) -> Value {
    json!({"rows": m.rows(), "cols": m.cols(), "entries": m.to_strings()})
}

fn les_value<F: Field>(les: &LongExactSequence<F>, with_maps: bool) -> Value {
    let degrees: Vec<Value> = les
        .degrees
        .iter()
        .map(|d| {
            let mut v = json!({
                "p": d.p,
                "dim_h_q": d.dims[0],
                "dim_h_q_plus_1": d.dims[1],
                "dim_layer_ext": d.dims[2],
                "nodes": d.nodes.iter().map(|n| json!({"node": n.node, "exact": n.exact})).collect::<Vec<_>>(),
            });
            if with_maps {
                v["maps"] = json!({
                    "h_q_to_h_q_plus_1": matrix_value(&d.a),
                    "h_q_plus_1_to_layer": matrix_value(&d.b),
                    "connecting": matrix_value(&d.c),
                });
            }
            v
        })
        .collect();
    json!({
        "exact": les.is_exact(),
        "alternating_sum_ok": les.alternating_sum_ok,
        "horseshoe_ranks": les.horseshoe_ranks,
        "degrees": degrees,
    })
}

fn les_check<F: Field>(engine: &HigherCohomology<F>, v: &GammaModule<F>, opts: &Options) -> Result<(Value, bool), CliError> {
    let mut rows = Vec::new();
    let mut pass = true;
    for q in 1..=opts.q_max {
        let witness = trivial_action_witness(&quotient_ses(engine, q)?)?;
        let les = long_exact_sequence(engine, v, q, opts.p_max)?;
        pass &= les.is_exact();
        let mut row = les_value(&les, true);
        row["q"] = json!(q);
        row["layer_dim"] = json!(witness.n);
        rows.push(row);
    }
    Ok((json!({ "dim": v.dim(), "sequences": rows }), pass))
}

fn verify<F: Field>(problem: &Problem<F>, engine: &HigherCohomology<F>, opts: &Options) -> Result<(Value, bool), CliError> {
    let mut pass = true;
    let (q_max, p_max) = (opts.q_max, opts.p_max);

    let mut trivial_action = Vec::new();
    for q in 1..=q_max {
        let w = trivial_action_witness(&quotient_ses(engine, q)?)?;
        trivial_action.push(json!({"q": q, "n": w.n, "trivial": true}));
    }

    let coinduced = GammaModule::coinduced(problem.group.clone(), problem.field.clone(), 1);
    let vanishing = vanishing_check(engine, &coinduced, q_max, p_max)?;
    pass &= vanishing.passed();

    let characteristic_zero = problem.field.spec().characteristic() == 0;
    let stabilizes_at_one = engine.filtration().stabilization_q() == 1;
    let collapse_applies = characteristic_zero || stabilizes_at_one;

    let mut modules = Vec::new();
    for (name, v) in &problem.modules {
        let mut ok = true;
        let g = grid(engine, v, opts)?;

        let mut les = Vec::new();
        for q in 1..=q_max {
            let seq = long_exact_sequence(engine, v, q, p_max)?;
            ok &= seq.is_exact();
            let mut row = les_value(&seq, false);
            row["q"] = json!(q);
            les.push(row);
        }

        let mut power = Vec::new();
        for q in 1..=q_max {
            for p in 0..=p_max {
                let (lhs, rhs) = power_identification(engine, v, q, p)?;
                ok &= lhs == rhs;
                power.push(json!({"q": q, "p": p, "lhs": lhs, "rhs": rhs, "agree": lhs == rhs}));
            }
        }

        let mut h0 = Vec::new();
        for q in 1..=q_max {
            let ann = v.h_q0_annihilator(engine.filtration(), q.min(engine.filtration().len()))?;
            let ind = v.h_q0_inductive(engine.sigma(), q);
            ok &= ann == ind;
            h0.push(json!({"q": q, "dim": ann.dim(), "agree": ann == ind}));
        }

        let mut bar = Vec::new();
        for p in 0..=p_max {
            let oracle = bar_oracle(v, p, BAR_ORACLE_BUDGET)?;
            ok &= oracle == g[0][p];
            bar.push(json!({"p": p, "ext": g[0][p], "bar": oracle, "agree": oracle == g[0][p]}));
        }

        let mut cocycle = Vec::new();
        if p_max >= 1 {
            for q in 1..=q_max {
                let c = h_q1_from_filtration(engine.algebra(), engine.filtration(), q.min(engine.filtration().len()), v)?;
                ok &= c == g[q - 1][1];
                cocycle.push(json!({"q": q, "ext": g[q - 1][1], "cocycle": c, "agree": c == g[q - 1][1]}));
            }
        }

        let constant = g.iter().all(|row| row == &g[0]);
        if collapse_applies {
            ok &= constant;
        }

        pass &= ok;
        modules.push(json!({
            "module": name,
            "grid": g,
            "les": les,
            "power_identification": power,
            "h0_annihilator_vs_inductive": h0,
            "q1_vs_bar": bar,
            "p1_vs_cocycle": cocycle,
            "collapse": {"applies": collapse_applies, "constant_in_q": constant},
            "pass": ok,
        }));
    }

    Ok((
        json!({
            "trivial_action": trivial_action,
            "vanishing": {
                "module": "coinduced(base_dim 1)",
                "nonzero": vanishing.nonzero.iter().map(|(q, p, d)| json!({"q": q, "p": p, "dim": d})).collect::<Vec<_>>(),
                "pass": vanishing.passed(),
            },
            "modules": modules,
        }),
        pass,
    ))
}

struct Check {
    name: &'static str,
    expected: Value,
    actual: Value,
}

/// Built-in instances with known answers; needs no problem file.
pub fn selftest() -> Result<Report, CliError> {
    let f2 = PrimeField::new(2)?;
    let f3 = PrimeField::new(3)?;
    let mut checks = Vec::new();

    let c2 = Arc::new(FiniteGroup::cyclic(2));
    let e = HigherCohomology::new(c2.clone(), f2, NormalSubgroup::trivial(), 2)?;
    let triv = GammaModule::trivial(c2.clone(), f2, 1);
    checks.push(Check {
        name: "C2 over F2, trivial module, H grid",
        expected: json!([[1, 1, 1], [1, 0, 0]]),
        actual: json!(hocoh::les::cohomology_grid(&e, &triv, 2, 2)?),
    });
    checks.push(Check {
        name: "C2 over F2, sequence at q=1 exact",
        expected: json!(true),
        actual: json!(long_exact_sequence(&e, &triv, 1, 2)?.is_exact()),
    });

    let c3 = Arc::new(FiniteGroup::cyclic(3));
    let e = HigherCohomology::new(c3.clone(), f3, NormalSubgroup::trivial(), 4)?;
    checks.push(Check {
        name: "C3 over F3, dim J_q",
        expected: json!([2, 1, 0, 0]),
        actual: json!((1..=4).map(|q| e.j(q).map(|s| s.dim())).collect::<Result<Vec<_>, _>>()?),
    });
    let reg = GammaModule::regular(e.algebra());
    checks.push(Check {
        name: "C3 over F3, regular module H_q^0",
        expected: json!([1, 2, 3, 3]),
        actual: json!((1..=4).map(|q| e.cohomology(&reg, q, 0).map(|x| x.dim())).collect::<Result<Vec<_>, _>>()?),
    });
    checks.push(Check {
        name: "C3 over F3, trivial module bar oracle p<=3",
        expected: json!([1, 1, 1, 1]),
        actual: json!((0..=3)
            .map(|p| bar_oracle(&GammaModule::trivial(c3.clone(), f3, 1), p, BAR_ORACLE_BUDGET))
            .collect::<Result<Vec<_>, _>>()?),
    });

    let s3 = Arc::new(FiniteGroup::symmetric(3));
    let a3_gen = (0..s3.order())
        .find(|&i| s3.element(i).images() == [1, 2, 0])
        .expect("3-cycle in S3");
    let a3 = NormalSubgroup::closure(&s3, &[a3_gen])?;
    let e = HigherCohomology::new(s3.clone(), f2, a3, 3)?;
    checks.push(Check {
        name: "S3/A3 over F2, dim J_q",
        expected: json!([5, 4, 4]),
        actual: json!((1..=3).map(|q| e.j(q).map(|s| s.dim())).collect::<Result<Vec<_>, _>>()?),
    });
    let e = HigherCohomology::new(s3.clone(), Rationals, NormalSubgroup::trivial(), 3)?;
    let triv_q = GammaModule::trivial(s3.clone(), Rationals, 1);
    checks.push(Check {
        name: "S3 over Q, trivial module H grid",
        expected: json!([[1, 0, 0], [1, 0, 0], [1, 0, 0]]),
        actual: json!(hocoh::les::cohomology_grid(&e, &triv_q, 3, 2)?),
    });
    checks.push(Check {
        name: "S3 over F2, trivial module H^1 by bar oracle",
        expected: json!(1),
        actual: json!(bar_oracle(&GammaModule::trivial(s3, f2, 1), 1, BAR_ORACLE_BUDGET)?),
    });

    let mut pass = true;
    let rows: Vec<Value> = checks
        .into_iter()
        .map(|c| {
            let ok = c.expected == c.actual;
            pass &= ok;
            json!({"name": c.name, "expected": c.expected, "actual": c.actual, "pass": ok})
        })
        .collect();
    let value = json!({
        "command": "selftest",
        "result": {"checks": rows},
        "pass": pass,
        "version": env!("CARGO_PKG_VERSION"),
    });
    Ok(Report { value, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(command: Command) -> Invocation {
        Invocation::new(command)
    }

    const C2: &str = r#"{"name":"c2","field":"F2","generators":[[1,0]],
        "modules":[{"name":"triv","kind":"trivial","dim":1},{"name":"reg","kind":"regular"}],
        "budgets":{"q_max":2,"p_max":2}}"#;

    #[test]
    fn selftest_passes() {
        let r = selftest().unwrap();
        assert!(r.pass, "{:#}", r.value);
    }

    #[test]
    fn info_reports_orders() {
        let r = execute_str(&inv(Command::Info), r#"{"field":"F2","generators":[]}"#).unwrap();
        assert_eq!(r.value["result"]["group_order"], 1);
        let r = execute_str(&inv(Command::Info), r#"{"field":"Q","generators":[[1,2,0],[1,0,2]],"sigma":[0]}"#).unwrap();
        assert_eq!(r.value["result"]["group_order"], 6);
        assert_eq!(r.value["result"]["sigma_order"], 3);
    }

    #[test]
    fn ideals_for_c2() {
        let r = execute_str(&inv(Command::Ideals), C2).unwrap();
        let rows = &r.value["result"]["rows"];
        assert_eq!(rows[0]["dim_j"], 1);
        assert_eq!(rows[0]["n"], 1);
        assert_eq!(rows[1]["dim_j"], 0);
        assert_eq!(rows[1]["n"], 0);
        assert_eq!(r.value["result"]["stabilization_q"], 2);
    }

    #[test]
    fn cohom_grid_for_c2() {
        let mut i = inv(Command::Cohom);
        i.module = Some("triv".into());
        let r = execute_str(&i, C2).unwrap();
        assert!(r.pass);
        assert_eq!(r.value["result"]["modules"][0]["grid"], json!([[1, 1, 1], [1, 0, 0]]));
    }

    #[test]
    fn unknown_module_is_an_input_error() {
        let mut i = inv(Command::H1);
        i.module = Some("nope".into());
        let err = execute_str(&i, C2).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn verify_and_recheck_agree() {
        let r = execute_str(&inv(Command::Verify), C2).unwrap();
        assert!(r.pass, "{:#}", r.value);
        let mut i = inv(Command::Verify);
        i.recheck = true;
        let again = execute_str(&i, C2).unwrap();
        assert_eq!(again.value["result"], r.value["result"]);
    }

    #[test]
    fn les_check_reports_maps() {
        let r = execute_str(&inv(Command::LesCheck), C2).unwrap();
        assert!(r.pass);
        let seq = &r.value["result"]["modules"][0]["sequences"][0];
        assert_eq!(seq["degrees"][0]["nodes"].as_array().unwrap().len(), 6);
        assert!(seq["degrees"][0]["maps"]["connecting"]["entries"].is_array());
    }

    #[test]
    fn flag_overrides() {
        let mut i = inv(Command::Ideals);
        i.q_max = Some(4);
        let r = execute_str(&i, C2).unwrap();
        assert_eq!(r.value["result"]["rows"].as_array().unwrap().len(), 4);
        i.p_max = Some(9);
        assert_eq!(execute_str(&i, C2).unwrap_err().exit_code(), 2);
    }
}
