//! JSON domain spec files.
//!
//! ```json
//! {"curves": ["x^2 + y^2 - 1"], "selected": [[0, 0]], "seed": [[0, 1], [0, 1]], "complement": false}
//! ```
//!
//! Seed coordinates are `[numerator, denominator]` pairs; each entry may be a JSON
//! integer or a decimal string for values beyond 64 bits.

use num_bigint::BigInt;
use reeb_core::{parse_polynomial, DomainSpec, Rational};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum Int {
    Small(i64),
    Big(String),
}

impl Int {
    fn of(n: &BigInt) -> Self {
        i64::try_from(n).map(Int::Small).unwrap_or_else(|_| Int::Big(n.to_string()))
    }

    fn value(&self) -> Result<BigInt, CliError> {
        match self {
            Int::Small(n) => Ok(BigInt::from(*n)),
            Int::Big(s) => s.trim().parse().map_err(|_| CliError::Input(format!("`{s}` is not an integer"))),
        }
    }
}

/// `[numerator, denominator]`.
pub type RationalPair = [Int; 2];

pub fn pair_of(q: &Rational) -> RationalPair {
    [Int::of(q.numer()), Int::of(q.denom())]
}

pub fn rational_of(p: &RationalPair) -> Result<Rational, CliError> {
    let (n, d) = (p[0].value()?, p[1].value()?);
    if d == BigInt::from(0) {
        return Err(CliError::Input("zero denominator in seed".into()));
    }
    Ok(Rational::new(n, d))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpecFile {
    pub curves: Vec<String>,
    pub selected: Vec<[usize; 2]>,
    pub seed: [RationalPair; 2],
    #[serde(default)]
    pub complement: bool,
}

impl SpecFile {
    pub fn to_spec(&self) -> Result<DomainSpec, CliError> {
        let mut curves = Vec::with_capacity(self.curves.len());
        for (i, text) in self.curves.iter().enumerate() {
            curves.push(parse_polynomial(text).map_err(|e| CliError::Input(format!("curve {i}: {e}")))?);
        }
        for [c, _] in &self.selected {
            if *c >= curves.len() {
                return Err(CliError::Input(format!("selected curve {c} does not exist")));
            }
        }
        let seed = (rational_of(&self.seed[0])?, rational_of(&self.seed[1])?);
        let mut spec = DomainSpec::new(curves, self.selected.iter().map(|[c, k]| (*c, *k)).collect(), seed);
        spec.complement = self.complement;
        Ok(spec)
    }

    pub fn from_spec(spec: &DomainSpec) -> Self {
        SpecFile {
            curves: spec.curves.iter().map(|f| f.to_string()).collect(),
            selected: spec.selected.iter().map(|&(c, k)| [c, k]).collect(),
            seed: [pair_of(&spec.seed.0), pair_of(&spec.seed.1)],
            complement: spec.complement,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{"curves": ["x^2 + y^2 - 1"], "selected": [[0, 0]], "seed": [[1, 2], ["-3", 4]]}"#;
        let f: SpecFile = serde_json::from_str(text).unwrap();
        let spec = f.to_spec().unwrap();
        assert_eq!(spec.seed.1, Rational::new((-3).into(), 4.into()));
        assert!(!spec.complement);
        let back = SpecFile::from_spec(&spec).to_spec().unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn big_integers_become_strings() {
        let q = Rational::new(BigInt::from(1) << 80, 3.into());
        let p = pair_of(&q);
        assert!(matches!(p[0], Int::Big(_)));
        assert_eq!(rational_of(&p).unwrap(), q);
    }

    #[test]
    fn bad_curve_is_an_input_error() {
        let text = r#"{"curves": ["y^x"], "selected": [], "seed": [[0, 1], [0, 1]]}"#;
        let f: SpecFile = serde_json::from_str(text).unwrap();
        assert!(matches!(f.to_spec(), Err(CliError::Input(_))));
    }
}
