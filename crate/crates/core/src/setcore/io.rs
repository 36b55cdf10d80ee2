//! Text and JSON encodings of families.
//!
//! Text: first line `n=<int>`, then one member per line as ascending
//! 1-indexed comma-separated elements, with `-` for the empty set.
//!
//! JSON: `{"n": int, "sets": [[int, ...], ...]}`.
//!
//! Both encoders walk the canonical member order, so decoding and
//! re-encoding a canonical file reproduces it byte for byte.

use serde::{Deserialize, Serialize};

use super::family::SetFamily;
use super::word::SetWord;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
pub(crate) struct FamilyJson {
    pub n: usize,
    pub sets: Vec<Vec<usize>>,
}

impl From<&SetFamily> for FamilyJson {
    fn from(f: &SetFamily) -> Self {
        FamilyJson {
            n: f.n(),
            sets: f.iter().map(|w| w.to_one_indexed()).collect(),
        }
    }
}

impl TryFrom<FamilyJson> for SetFamily {
    type Error = Error;

    fn try_from(j: FamilyJson) -> Result<SetFamily> {
        SetFamily::from_one_indexed(j.n, &j.sets)
    }
}

impl Serialize for SetFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FamilyJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SetFamily {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = FamilyJson::deserialize(d)?;
        SetFamily::try_from(j).map_err(serde::de::Error::custom)
    }
}

impl SetFamily {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("family serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<SetFamily> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("n={}\n", self.n());
        for w in self {
            if w.is_empty() {
                out.push('-');
            } else {
                let parts: Vec<String> = w.elements().map(|e| (e + 1).to_string()).collect();
                out.push_str(&parts.join(","));
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(s: &str) -> Result<SetFamily> {
        let mut lines = s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing `n=<int>` header".into(),
        })?;
        let n: usize = header
            .trim()
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::Parse {
                line: 1,
                message: format!("expected `n=<int>`, found `{}`", header.trim()),
            })?;
        super::word::check_n(n)?;
        let mut words = Vec::new();
        for (idx, line) in lines {
            let line = line.trim();
            let parse_err = |message: String| Error::Parse {
                line: idx + 1,
                message,
            };
            if line == "-" || line == "∅" {
                words.push(SetWord::EMPTY);
                continue;
            }
            let mut elems = Vec::new();
            for tok in line.split(',') {
                let e: usize = tok
                    .trim()
                    .parse()
                    .map_err(|_| parse_err(format!("bad element `{}`", tok.trim())))?;
                elems.push(e);
            }
            let w = SetWord::from_one_indexed(&elems, n).map_err(|e| parse_err(e.to_string()))?;
            words.push(w);
        }
        SetFamily::new(n, words)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn text_format_layout() {
        let f = SetFamily::from_one_indexed(3, &[vec![1, 3], vec![], vec![2]]).unwrap();
        assert_eq!(f.to_text(), "n=3\n-\n2\n1,3\n");
        assert_eq!(f.to_json(), r#"{"n":3,"sets":[[],[2],[1,3]]}"#);
    }

    #[test]
    fn text_parse_errors() {
        assert!(SetFamily::from_text("").is_err());
        assert!(SetFamily::from_text("m=3\n").is_err());
        assert!(SetFamily::from_text("n=3\n1,x\n").is_err());
        assert!(SetFamily::from_text("n=3\n4\n").is_err());
        assert!(SetFamily::from_json(r#"{"n":3,"sets":[[0]]}"#).is_err());
    }

    #[test]
    fn non_canonical_input_is_canonicalized() {
        let f = SetFamily::from_text("n=4\n3,1\n-\n1,3\n").unwrap();
        assert_eq!(f.to_text(), "n=4\n-\n1,3\n");
    }

    proptest! {
        #[test]
        fn both_formats_round_trip_bytes(n in 1usize..10, raw in proptest::collection::vec(any::<u64>(), 0..30)) {
            let mask = super::super::word::ground_mask(n);
            let f = SetFamily::new(n, raw.into_iter().map(|w| SetWord(w & mask))).unwrap();
            let text = f.to_text();
            let json = f.to_json();
            let back_text = SetFamily::from_text(&text).unwrap();
            let back_json = SetFamily::from_json(&json).unwrap();
            prop_assert_eq!(&back_text, &f);
            prop_assert_eq!(back_text.to_text(), text);
            prop_assert_eq!(back_json.to_json(), json);
        }
    }
}
