//! Model files, verification reports and the serde helpers they share.

mod model_file;
mod report;

pub use model_file::{fingerprint, read_model, write_model, MODEL_HEADER};
pub use report::{ModelSummary, ReportConfig, SuiteEntry, VerificationReport, REPORT_SCHEMA};

/// Serializes `Vec<Rational>` as `"num/den"` strings.
pub mod rational_vec {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::exact::rational::{format_rational, parse_rational};
    use crate::exact::Rational;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(format_rational)
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect()
    }
}

/// Serializes `Vec<Vec<Rational>>` as nested `"num/den"` strings.
pub mod rational_matrix {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::exact::rational::{format_rational, parse_rational};
    use crate::exact::Rational;

    pub fn serialize<S: Serializer>(v: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|row| row.iter().map(format_rational).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        Vec::<Vec<String>>::deserialize(d)?
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| parse_rational(s).map_err(D::Error::custom))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use serde::{Deserialize, Serialize};

    use crate::exact::rational::ratio;
    use crate::exact::Rational;

    #[derive(Debug, PartialEq, Serialize, Deserialize)]
    struct Holder {
        #[serde(with = "super::rational_vec")]
        v: Vec<Rational>,
        #[serde(with = "super::rational_matrix")]
        m: Vec<Vec<Rational>>,
    }

    #[test]
    fn rationals_serialize_as_strings() {
        let h = Holder {
            v: vec![ratio(-3, 6), ratio(4, 1)],
            m: vec![vec![ratio(1, 3)], vec![]],
        };
        let s = serde_json::to_string(&h).unwrap();
        assert_eq!(s, r#"{"v":["-1/2","4/1"],"m":[["1/3"],[]]}"#);
        assert_eq!(serde_json::from_str::<Holder>(&s).unwrap(), h);
        assert!(serde_json::from_str::<Holder>(r#"{"v":["1/0"],"m":[]}"#).is_err());
    }
}
