use std::sync::Arc;

use num_traits::Signed;
use serde_json::{json, Value};

use novikov_core::groups::{parse_presentation, CohomologyClass, GroupPresentation, Word};
use novikov_core::hnn::{
    build_truncated_action, check_witness, is_ascending_free_base, witness_series, Ascending, HnnData, WitnessOutcome,
};
use novikov_core::laurent::{determinant, LaurentPoly, Phi};
use novikov_core::novikov::{acyclicity_test, invert_matrix, truncated_inverse_oracle, Direction, NovikovCompletion, OracleOutcome};
use novikov_core::polycyclic::{pc_deg_phi, pc_invertibility, PcElement, PcGrading, PcGroup};
use novikov_core::surfaces::{connectedness_obstruction, reduce_weights, CutGraph, ReduceMode, SurfaceError, Weight};
use novikov_core::torsion::{
    build_complex, delta_zero, fiber_check as run_fiber_check, fibered_cone_probe, novikov_vanishes_pc, tau_of_complex, torsion_degree,
    torsion_string, AbelianImage, PcImage, PresentationComplex, TorsionError, Vanishing,
};
use novikov_core::Matrix;

use crate::input::{load_group, load_phi, parse_integers, read_file};
use crate::{CommonArgs, DirectionArg, Format, GroupArgs, HnnArgs, Outcome, WeightArgs};

type CmdResult = Result<Outcome, String>;

const EXIT_INCONCLUSIVE: u8 = 2;

fn render(common: &CommonArgs, value: Value, text: String, code: u8) -> CmdResult {
    let body = match common.format {
        Format::Json => serde_json::to_string_pretty(&value).map_err(|e| e.to_string())?,
        Format::Text => text.trim_end().to_string(),
    };
    Ok(Outcome { body, code })
}

fn directions(d: DirectionArg) -> Vec<Direction> {
    match d {
        DirectionArg::Plus => vec![Direction::Plus],
        DirectionArg::Minus => vec![Direction::Minus],
        DirectionArg::Both => vec![Direction::Plus, Direction::Minus],
    }
}

fn direction_key(d: Direction) -> &'static str {
    match d {
        Direction::Plus => "plus",
        Direction::Minus => "minus",
    }
}

/// The presentation complex of the maximal free abelian cover, graded by the
/// chosen class.
struct Setup {
    complex: PresentationComplex,
    phi: Phi,
    names: Vec<String>,
}

fn setup(args: &GroupArgs) -> Result<(GroupPresentation, CohomologyClass, Setup), String> {
    let p = load_group(args)?;
    let class = load_phi(args, &p)?;
    let gamma = AbelianImage::abelianization(&p).map_err(|e| e.to_string())?;
    let phi = gamma.phi_on_quotient(&class).map_err(|e| e.to_string())?;
    let complex = build_complex(&p, &gamma, &phi).map_err(|e| e.to_string())?;
    let names = complex.variable_names();
    Ok((p, class, Setup { complex, phi, names }))
}

pub fn alexander(args: &GroupArgs) -> CmdResult {
    let (_, _, s) = setup(args)?;
    let tau = tau_of_complex(&s.complex).map_err(|e| e.to_string())?;
    let poly = match tau.fraction() {
        None => LaurentPoly::zero(s.names.len()),
        Some(f) => {
            let mut num = f.numerator().clone();
            if s.names.len() == 1 {
                num = &num * &LaurentPoly::univariate(&[(0, 1), (1, -1)]);
            }
            num.exact_div(f.denominator()).ok_or_else(|| format!("torsion {} is not a polynomial", torsion_string(&tau, &s.names)))?
        }
    };
    let delta = poly.canonical().to_string_with(&s.names);
    let value = json!({ "alexander": delta, "variables": s.names });
    render(&args.common, value, format!("alexander polynomial: {delta}"), 0)
}

pub fn torsion(args: &GroupArgs) -> CmdResult {
    let (_, _, s) = setup(args)?;
    let tau = tau_of_complex(&s.complex).map_err(|e| e.to_string())?;
    let (degree, monic) = torsion_degree(&tau, &s.phi).map_err(|e| e.to_string())?;
    let shown = torsion_string(&tau, &s.names);
    let value = json!({
        "tau": shown,
        "degree": degree.to_string(),
        "monic": monic,
        "variables": s.names,
    });
    render(&args.common, value, format!("tau: {shown}\ndegree: {degree}\nmonic: {monic}"), 0)
}

/// Rechecks a commutative verdict with the level-by-level solver. Only one
/// variable is supported; `None` means the check was skipped.
fn oracle_agrees(bp: &Matrix<LaurentPoly>, phi: &Phi, direction: Direction, horizon: i64, vanishes: bool) -> Option<bool> {
    if phi.nvars() != 1 || bp.rows() == 0 {
        return None;
    }
    // phi(t) = c with c < 0 swaps the two completions
    let dir = if phi.values()[0].is_negative() {
        match direction {
            Direction::Plus => Direction::Minus,
            Direction::Minus => Direction::Plus,
        }
    } else {
        direction
    };
    let outcome = match truncated_inverse_oracle(bp, dir, horizon) {
        OracleOutcome::Singular => {
            let det = Matrix::from_fn(1, 1, |_, _| determinant(bp));
            truncated_inverse_oracle(&det, dir, horizon)
        }
        other => other,
    };
    match outcome {
        OracleOutcome::Invertible(_) => Some(vanishes),
        OracleOutcome::NotInvertible { .. } => Some(!vanishes),
        OracleOutcome::Singular => Some(!vanishes),
    }
}

pub fn fiber_check(args: &GroupArgs) -> CmdResult {
    let (p, class, s) = setup(args)?;
    let verdict = run_fiber_check(&p, &class).map_err(|e| e.to_string())?;
    let mut value = verdict.to_json();
    let mut text = verdict.to_text();
    let mut code = 0;
    if args.common.oracle {
        let based = s.complex.to_based().map_err(|e| e.to_string())?;
        let bp = based.b_prime();
        let checks = [(Direction::Plus, verdict.novikov_plus), (Direction::Minus, verdict.novikov_minus)];
        let mut agree = json!({});
        for (d, v) in checks {
            let a = oracle_agrees(&bp, &s.phi, d, args.common.horizon, v);
            if a == Some(false) {
                code = EXIT_INCONCLUSIVE;
            }
            agree[direction_key(d)] = json!(a);
            text.push_str(&format!("oracle {}: {}\n", d.symbol(), describe_agreement(a)));
        }
        value["oracle"] = agree;
    }
    render(&args.common, value, text, code)
}

fn describe_agreement(a: Option<bool>) -> &'static str {
    match a {
        Some(true) => "agrees",
        Some(false) => "DISAGREES",
        None => "skipped",
    }
}

pub fn novikov(args: &GroupArgs) -> CmdResult {
    let (_, _, s) = setup(args)?;
    let based = s.complex.to_based().map_err(|e| e.to_string())?;
    let bp = based.b_prime();
    let mut value = json!({
        "b_prime": matrix_json(&bp, &s.names),
        "variables": s.names,
    });
    let mut text = format!("B' = {}\n", matrix_text(&bp, &s.names));
    let mut code = 0;
    for d in directions(args.common.direction) {
        let ring = NovikovCompletion { phi: s.phi.clone(), direction: d, horizon: args.common.horizon };
        let report = acyclicity_test(&based, &ring).map_err(|e| e.to_string())?;
        let vanishing = if report.acyclic { Vanishing::Vanishes } else { Vanishing::NonVanishing };
        let mut entry = json!({
            "vanishing": vanishing.as_str(),
            "det_b_prime": report.det_b_prime.to_string_with(&s.names),
        });
        text.push_str(&format!("direction {}: {}\n", d.symbol(), vanishing.as_str()));
        if report.acyclic {
            match invert_matrix(&bp, &s.phi, d, args.common.horizon) {
                Ok(inv) => {
                    let shown: Vec<Vec<String>> =
                        (0..inv.rows()).map(|i| (0..inv.cols()).map(|j| inv.get(i, j).to_string_with(&s.names)).collect()).collect();
                    text.push_str(&format!("  inverse of B' to horizon {}: {:?}\n", args.common.horizon, shown));
                    entry["inverse"] = json!(shown);
                }
                Err(_) => entry["inverse"] = Value::Null,
            }
        }
        if args.common.oracle {
            let a = oracle_agrees(&bp, &s.phi, d, args.common.horizon, report.acyclic);
            if a == Some(false) {
                code = EXIT_INCONCLUSIVE;
            }
            entry["oracle"] = json!(a);
            text.push_str(&format!("  oracle: {}\n", describe_agreement(a)));
        }
        value[direction_key(d)] = entry;
    }
    render(&args.common, value, text, code)
}

fn matrix_json(m: &Matrix<LaurentPoly>, names: &[String]) -> Value {
    json!((0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string_with(names)).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn matrix_text(m: &Matrix<LaurentPoly>, names: &[String]) -> String {
    let rows: Vec<String> =
        (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string_with(names)).collect::<Vec<_>>().join(", ")).collect();
    format!("[{}]", rows.join("; "))
}

pub fn delta0(args: &GroupArgs) -> CmdResult {
    let p = load_group(args)?;
    let d = delta_zero(&p).map_err(|e| e.to_string())?;
    render(&args.common, json!({ "delta0": d }), format!("deg Delta = {d}"), 0)
}

pub fn cone(args: &GroupArgs) -> CmdResult {
    let (_, _, s) = setup(args)?;
    match fibered_cone_probe(&s.complex, &s.phi) {
        Ok(probe) => {
            let text = probe.constraints(&s.names).join("\n");
            render(&args.common, probe.to_json(&s.names), text, 0)
        }
        Err(TorsionError::NotNormalizable) => {
            let reason = TorsionError::NotNormalizable.to_string();
            render(&args.common, json!({ "cone": Value::Null, "reason": reason }), format!("no cone: {reason}"), EXIT_INCONCLUSIVE)
        }
        Err(e) => Err(e.to_string()),
    }
}

pub fn hnn_witness(args: &HnnArgs) -> CmdResult {
    let h = HnnData::from_json(&read_file(&args.input)?).map_err(|e| e.to_string())?;
    let ascending = is_ascending_free_base(&h);
    let action = build_truncated_action(&h, args.depth).map_err(|e| e.to_string())?;
    let outcome = witness_series(&action).map_err(|e| e.to_string())?;
    let asc = match ascending {
        Ascending::Ascending => "ascending",
        Ascending::NotAscending => "not-ascending",
        Ascending::Unknown => "unknown",
    };
    let mut text = format!("ascending: {asc}\ncosets of A: {}\n", action.x_labels.join(", "));
    let witness = match &outcome {
        WitnessOutcome::NoWitness => {
            text.push_str("witness: none\n");
            Value::Null
        }
        WitnessOutcome::Witness(w) => {
            let shown = w.to_string_with(&action.x_labels);
            text.push_str(&format!("witness: {shown}\n"));
            json!({ "series": shown, "terms": w.terms, "verified": check_witness(&action, w) })
        }
    };
    let value = json!({ "ascending": asc, "action": action.to_json(), "witness": witness });
    let code = if ascending == Ascending::Unknown { EXIT_INCONCLUSIVE } else { 0 };
    render(&args.common, value, text, code)
}

pub fn weight_reduce(args: &WeightArgs) -> CmdResult {
    let g = CutGraph::from_json(&read_file(&args.input)?).map_err(|e| e.to_string())?;
    let w0 = match &args.weight {
        Some(s) => Weight(
            parse_integers(s)?
                .into_iter()
                .map(|v| u64::try_from(v).map_err(|_| format!("weight {v} is negative")))
                .collect::<Result<_, _>>()?,
        ),
        None => Weight::ones(g.edges().len()),
    };
    let mode = if args.relax { ReduceMode::Relax } else { ReduceMode::Strict };
    let result = if args.obstruction {
        connectedness_obstruction(&g, &w0, !args.non_primitive, !args.tau_zero).map(|(o, r)| (Some(o), r))
    } else {
        reduce_weights(&g, &w0, mode).map(|r| (None, r))
    };
    match result {
        Ok((obstruction, report)) => {
            let mut value = report.to_json();
            let mut text = format!(
                "initial weight: {:?}\nfinal weight: {:?}\n|v| = {}\nsteps: {}\nsucceeded: {}\n",
                report.initial_weight.0,
                report.final_weight.0,
                report.final_weight.total(),
                report.steps,
                report.succeeded()
            );
            if let Some(o) = obstruction {
                value["obstruction"] = o.to_json();
                text.push_str(&format!("obstruction: {}\n", o.to_json()));
            }
            render(&args.common, value, text, 0)
        }
        Err(e @ SurfaceError::StrictInequalityBranch { .. }) => {
            let reason = e.to_string();
            render(&args.common, json!({ "status": "strict-inequality", "reason": reason }), reason, EXIT_INCONCLUSIVE)
        }
        Err(e) => Err(e.to_string()),
    }
}

pub fn heisenberg_demo(common: &CommonArgs) -> CmdResult {
    let h = Arc::new(PcGroup::heisenberg());
    let grading = PcGrading::integral(&h, &[1, 0, 0]).map_err(|e| e.to_string())?;
    let x = PcElement::generator(&h, 0);
    let y = PcElement::generator(&h, 1);
    let one = PcElement::one(&h);
    let two = PcElement::constant(&h, 2);
    let yx = h.collect(&Word::from_signed(&[2, 1])).map_err(|e| e.to_string())?;
    let mut text = format!("y*x = {}\n", h.element_string(&yx));
    let mut value = json!({ "collect": { "y*x": h.element_string(&yx) } });

    let product = one.sub(&x).mul(&y.sub(&x));
    let degree = pc_deg_phi(&product, &grading);
    text.push_str(&format!("(1 - x)*(y - x) = {product}, deg = {degree}\n"));
    value["product"] = json!({ "value": product.to_string(), "degree": degree.to_string() });

    let zero = PcElement::zero(&h);
    let cases: Vec<(&str, Matrix<PcElement>)> = vec![
        ("1 - x", Matrix::from_fn(1, 1, |_, _| one.sub(&x))),
        ("2 - x", Matrix::from_fn(1, 1, |_, _| two.sub(&x))),
        ("y - x", Matrix::from_fn(1, 1, |_, _| y.sub(&x))),
        (
            "diag(1, x)",
            Matrix::from_fn(2, 2, |i, j| match (i, j) {
                (0, 0) => one.clone(),
                (1, 1) => x.clone(),
                _ => zero.clone(),
            }),
        ),
    ];
    let mut inv = serde_json::Map::new();
    for (name, m) in cases {
        let verdict = format!("{:?}", pc_invertibility(&m, &grading).map_err(|e| e.to_string())?);
        text.push_str(&format!("invertibility of {name}: {verdict}\n"));
        inv.insert(name.to_string(), json!(verdict));
    }
    value["invertibility"] = Value::Object(inv);

    // the class-2 relator [a, [a, b]] mapped onto the generators x, y
    let p = parse_presentation("gens: a b\nrel: aabABAbaBA").map_err(|e| e.to_string())?;
    let target = PcImage::new(&p, h.clone(), vec![h.generator(0), h.generator(1)]).map_err(|e| e.to_string())?;
    let mut nov = serde_json::Map::new();
    let mut code = 0;
    for d in directions(common.direction) {
        let v = novikov_vanishes_pc(&p, &target, &grading, d).map_err(|e| e.to_string())?;
        if v == Vanishing::Inconclusive {
            code = EXIT_INCONCLUSIVE;
        }
        text.push_str(&format!("novikov {} for <a, b | [a, [a, b]]>: {}\n", d.symbol(), v.as_str()));
        nov.insert(direction_key(d).to_string(), json!(v.as_str()));
    }
    value["novikov"] = Value::Object(nov);
    render(common, value, text, code)
}
