//! String and JSON forms of Laurent polynomials.
//!
//! The string form lists terms in increasing exponent order, for example
//! `2*t^-1 - 3 + 2*t`. Multivariable monomials join named variables with `*`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::{LaurentError, LaurentPoly};

/// Default variable names: `t`, `u`, `v`, `w`, then `x4`, `x5`, ...
pub fn default_names(nvars: usize) -> Vec<String> {
    const BASE: [&str; 4] = ["t", "u", "v", "w"];
    (0..nvars).map(|i| BASE.get(i).map_or_else(|| format!("x{i}"), |s| s.to_string())).collect()
}

fn monomial_string(e: &[i64], names: &[String]) -> String {
    let mut parts = Vec::new();
    for (k, &x) in e.iter().enumerate() {
        match x {
            0 => {}
            1 => parts.push(names[k].clone()),
            _ => parts.push(format!("{}^{}", names[k], x)),
        }
    }
    parts.join("*")
}

impl LaurentPoly {
    pub fn to_string_with(&self, names: &[String]) -> String {
        assert!(names.len() >= self.nvars());
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let mono = monomial_string(e, names);
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }

    /// JSON term list: `[{"exp": [..], "coeff": c}, ...]`. Coefficients that
    /// fit in 64 bits are numbers, larger ones strings.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms()
                .map(|(e, c)| {
                    let coeff = match c.to_i64() {
                        Some(v) => json!(v),
                        None => json!(c.to_string()),
                    };
                    json!({ "exp": e, "coeff": coeff })
                })
                .collect(),
        )
    }

    pub fn from_json(nvars: usize, v: &Value) -> Result<Self, LaurentError> {
        let err = |m: &str| LaurentError::Parse { column: 0, message: m.to_string() };
        let arr = v.as_array().ok_or_else(|| err("expected a term list"))?;
        let mut p = LaurentPoly::zero(nvars);
        for term in arr {
            let exp: Vec<i64> = term
                .get("exp")
                .and_then(Value::as_array)
                .ok_or_else(|| err("term without exponent list"))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| err("non-integer exponent")))
                .collect::<Result<_, _>>()?;
            if exp.len() != nvars {
                return Err(LaurentError::VariableMismatch(exp.len(), nvars));
            }
            let coeff = match term.get("coeff") {
                Some(Value::Number(n)) => BigInt::from(n.as_i64().ok_or_else(|| err("non-integer coefficient"))?),
                Some(Value::String(s)) => s.parse().map_err(|_| err("bad coefficient"))?,
                _ => return Err(err("term without coefficient")),
            };
            p.add_term(exp, coeff);
        }
        Ok(p)
    }

    /// Parses the string form with the given variable names.
    pub fn parse_with(s: &str, names: &[String]) -> Result<Self, LaurentError> {
        Parser { src: s.as_bytes(), pos: 0, names }.parse()
    }

    /// Parses a one-variable polynomial in `t`.
    pub fn parse_univariate(s: &str) -> Result<Self, LaurentError> {
        Self::parse_with(s, &default_names(1))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_names(self.nvars())))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> LaurentError {
        LaurentError::Parse { column: self.pos + 1, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn name(&mut self) -> Option<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        let word = std::str::from_utf8(&self.src[start..self.pos]).ok()?;
        match self.names.iter().position(|n| n == word) {
            Some(i) => Some(i),
            None => {
                self.pos = start;
                None
            }
        }
    }

    fn exponent(&mut self) -> Result<i64, LaurentError> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        let neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let n = self.integer().ok_or_else(|| self.error("expected exponent"))?;
        let n = n.to_i64().ok_or_else(|| self.error("exponent out of range"))?;
        Ok(if neg { -n } else { n })
    }

    fn term(&mut self, sign: BigInt) -> Result<(Vec<i64>, BigInt), LaurentError> {
        let nvars = self.names.len();
        let mut coeff = sign;
        let mut exp = vec![0i64; nvars];
        let mut factors = 0;
        loop {
            if let Some(c) = self.integer() {
                coeff *= c;
            } else if let Some(i) = self.name() {
                exp[i] += self.exponent()?;
            } else {
                return Err(self.error("expected coefficient or variable"));
            }
            factors += 1;
            if self.peek() == Some(b'*') {
                self.pos += 1;
                continue;
            }
            break;
        }
        debug_assert!(factors > 0);
        Ok((exp, coeff))
    }

    fn parse(mut self) -> Result<LaurentPoly, LaurentError> {
        let mut p = LaurentPoly::zero(self.names.len());
        let mut sign = BigInt::one();
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -sign;
        }
        loop {
            let (e, c) = self.term(sign)?;
            if !c.is_zero() {
                p.add_term(e, c);
            }
            match self.peek() {
                None => return Ok(p),
                Some(b'+') => sign = BigInt::one(),
                Some(b'-') => sign = -BigInt::one(),
                Some(_) => return Err(self.error("expected '+' or '-'")),
            }
            self.pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_form() {
        let p = LaurentPoly::univariate(&[(-1, 2), (0, -3), (1, 2)]);
        assert_eq!(p.to_string(), "2*t^-1 - 3 + 2*t");
        assert_eq!(LaurentPoly::parse_univariate("2*t^-1 - 3 + 2*t").unwrap(), p);
        assert_eq!(LaurentPoly::zero(1).to_string(), "0");
        assert_eq!(LaurentPoly::univariate(&[(2, -1)]).to_string(), "-t^2");
    }

    #[test]
    fn multivariable_string_form() {
        let names = default_names(2);
        let p = LaurentPoly::parse_with("1 - t*u^-1 - t", &names).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.coeff(&[1, -1]), BigInt::from(-1));
        assert_eq!(LaurentPoly::parse_with(&p.to_string_with(&names), &names).unwrap(), p);
    }

    #[test]
    fn parse_errors_have_columns() {
        match LaurentPoly::parse_univariate("1 + q") {
            Err(LaurentError::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn json_round_trip() {
        let p = LaurentPoly::univariate(&[(-1, 2), (3, -7)]);
        assert_eq!(LaurentPoly::from_json(1, &p.to_json()).unwrap(), p);
    }
}
