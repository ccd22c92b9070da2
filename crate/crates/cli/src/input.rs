use std::fs;
use std::str::FromStr;

use num_rational::BigRational;

use novikov_core::groups::{braid_to_knot_group, parse_presentation, parse_presentation_json, CohomologyClass, GroupPresentation};

use crate::GroupArgs;

pub fn read_file(path: &str) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))
}

fn parse_text(text: &str) -> Result<GroupPresentation, String> {
    let result = if text.trim_start().starts_with('{') { parse_presentation_json(text) } else { parse_presentation(text) };
    result.map_err(|e| e.to_string())
}

pub fn parse_integers(s: &str) -> Result<Vec<i64>, String> {
    s.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| format!("'{x}' is not an integer"))).collect()
}

/// The group named by `--braid`, `--inline` or the input path.
pub fn load_group(args: &GroupArgs) -> Result<GroupPresentation, String> {
    if let Some(b) = &args.braid {
        return braid_to_knot_group(&parse_integers(b)?).map_err(|e| e.to_string());
    }
    if let Some(text) = &args.inline {
        let lines: Vec<&str> = text.split(';').map(str::trim).collect();
        return parse_text(&lines.join("\n"));
    }
    match &args.input {
        Some(path) => parse_text(&read_file(path)?),
        None => Err("no input: give a file, --braid or --inline".into()),
    }
}

/// `--phi` if given, else the first class induced by the abelianization.
pub fn load_phi(args: &GroupArgs, p: &GroupPresentation) -> Result<CohomologyClass, String> {
    match &args.phi {
        Some(s) => {
            let values = s
                .split(',')
                .map(|x| BigRational::from_str(x.trim()).map_err(|_| format!("'{x}' is not a rational number")))
                .collect::<Result<Vec<_>, _>>()?;
            CohomologyClass::new(p, values).map_err(|e| e.to_string())
        }
        None => p.induced_phi().map_err(|e| e.to_string())?.into_iter().next().ok_or_else(|| "no class to use".to_string()),
    }
}
