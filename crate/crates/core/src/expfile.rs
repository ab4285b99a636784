//! A strict, line-oriented experiment description format.
//!
//! Experiments are data, not code: a document is a handful of
//! `key=value` lines, `#` starts a comment, blank lines are ignored, and
//! LF or CRLF both parse (canonical output is LF). Keys are
//! case-sensitive and each required key must appear exactly once:
//!
//! ```text
//! # E(P,Q; +out,-out)
//! name=eq1
//! scheme=A
//! bs2_plus=out
//! bs2_minus=out
//! transmissivity=1/sqrt2    # optional; this exact default when absent
//! ```
//!
//! `transmissivity` accepts a decimal in `[0, 1]` or the literal
//! `1/sqrt2`, which maps to the exact double nearest `1/√2` so the
//! canonical experiments stay on the `√2` amplitude lattice. Every parse
//! failure carries the offending line number.

use std::fmt;

use crate::interferometer::{BsSetting, ExperimentConfig, Scheme};

/// A named experiment configuration, as read from or written to a file.
///
/// The name is nonempty and free of control characters.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentDoc {
    pub name: String,
    pub config: ExperimentConfig,
}

/// Parse failures, each pointing at the offending line and key.
#[derive(Debug, Clone, PartialEq)]
pub enum ParseError {
    /// A non-comment line has no `=` separator.
    MissingDelimiter {
        line: usize,
    },
    UnknownKey {
        line: usize,
        key: String,
    },
    DuplicateKey {
        line: usize,
        key: &'static str,
    },
    /// A required key never appeared; `end_line` is the last input line.
    MissingKey {
        key: &'static str,
        end_line: usize,
    },
    /// The value does not belong to the key's domain.
    MalformedValue {
        line: usize,
        key: &'static str,
        value: String,
    },
    /// A numeric value parsed but lies outside the key's range.
    OutOfRange {
        line: usize,
        key: &'static str,
        value: f64,
    },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::MissingDelimiter { line } => {
                write!(f, "line {line}: expected key=value")
            }
            ParseError::UnknownKey { line, key } => {
                write!(f, "line {line}: unknown key `{key}`")
            }
            ParseError::DuplicateKey { line, key } => {
                write!(f, "line {line}: duplicate key `{key}`")
            }
            ParseError::MissingKey { key, end_line } => {
                write!(
                    f,
                    "missing required key `{key}` (input ends at line {end_line})"
                )
            }
            ParseError::MalformedValue { line, key, value } => {
                write!(f, "line {line}: malformed value for `{key}`: {value:?}")
            }
            ParseError::OutOfRange { line, key, value } => {
                write!(f, "line {line}: `{key}` out of [0, 1]: {value}")
            }
        }
    }
}

impl std::error::Error for ParseError {}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(char::is_control)
}

/// Parse one experiment document.
pub fn parse_experiment(text: &str) -> Result<ExperimentDoc, ParseError> {
    let mut name: Option<String> = None;
    let mut scheme: Option<Scheme> = None;
    let mut bs2_plus: Option<BsSetting> = None;
    let mut bs2_minus: Option<BsSetting> = None;
    let mut transmissivity: Option<f64> = None;
    let mut end_line = 0;

    for (index, raw_line) in text.lines().enumerate() {
        let line = index + 1;
        end_line = line;
        let content = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        let content = content.trim();
        if content.is_empty() {
            continue;
        }
        let eq = content
            .find('=')
            .ok_or(ParseError::MissingDelimiter { line })?;
        let key = content[..eq].trim();
        let value = content[eq + 1..].trim();
        match key {
            "name" => {
                if name.is_some() {
                    return Err(ParseError::DuplicateKey { line, key: "name" });
                }
                if !valid_name(value) {
                    return Err(ParseError::MalformedValue {
                        line,
                        key: "name",
                        value: value.to_string(),
                    });
                }
                name = Some(value.to_string());
            }
            "scheme" => {
                if scheme.is_some() {
                    return Err(ParseError::DuplicateKey {
                        line,
                        key: "scheme",
                    });
                }
                scheme = Some(match value {
                    "A" => Scheme::A,
                    "B" => Scheme::B,
                    _ => {
                        return Err(ParseError::MalformedValue {
                            line,
                            key: "scheme",
                            value: value.to_string(),
                        })
                    }
                });
            }
            "bs2_plus" => {
                if bs2_plus.is_some() {
                    return Err(ParseError::DuplicateKey {
                        line,
                        key: "bs2_plus",
                    });
                }
                bs2_plus = Some(parse_setting(value, line, "bs2_plus")?);
            }
            "bs2_minus" => {
                if bs2_minus.is_some() {
                    return Err(ParseError::DuplicateKey {
                        line,
                        key: "bs2_minus",
                    });
                }
                bs2_minus = Some(parse_setting(value, line, "bs2_minus")?);
            }
            "transmissivity" => {
                if transmissivity.is_some() {
                    return Err(ParseError::DuplicateKey {
                        line,
                        key: "transmissivity",
                    });
                }
                let t = if value == "1/sqrt2" {
                    std::f64::consts::FRAC_1_SQRT_2
                } else {
                    value
                        .parse::<f64>()
                        .map_err(|_| ParseError::MalformedValue {
                            line,
                            key: "transmissivity",
                            value: value.to_string(),
                        })?
                };
                if !t.is_finite() || !(0.0..=1.0).contains(&t) {
                    return Err(ParseError::OutOfRange {
                        line,
                        key: "transmissivity",
                        value: t,
                    });
                }
                transmissivity = Some(t);
            }
            _ => {
                return Err(ParseError::UnknownKey {
                    line,
                    key: key.to_string(),
                })
            }
        }
    }

    let name = name.ok_or(ParseError::MissingKey {
        key: "name",
        end_line,
    })?;
    let scheme = scheme.ok_or(ParseError::MissingKey {
        key: "scheme",
        end_line,
    })?;
    let bs2_plus = bs2_plus.ok_or(ParseError::MissingKey {
        key: "bs2_plus",
        end_line,
    })?;
    let bs2_minus = bs2_minus.ok_or(ParseError::MissingKey {
        key: "bs2_minus",
        end_line,
    })?;

    let mut config = ExperimentConfig::new(scheme, bs2_plus, bs2_minus);
    if let Some(t) = transmissivity {
        config = config
            .with_transmissivity(t)
            .expect("range already validated");
    }
    Ok(ExperimentDoc { name, config })
}

fn parse_setting(value: &str, line: usize, key: &'static str) -> Result<BsSetting, ParseError> {
    match value {
        "in" => Ok(BsSetting::In),
        "out" => Ok(BsSetting::Out),
        _ => Err(ParseError::MalformedValue {
            line,
            key,
            value: value.to_string(),
        }),
    }
}

/// Serialize a document in canonical form: fixed key order, LF endings,
/// and the default transmissivity elided.
pub fn serialize_experiment(doc: &ExperimentDoc) -> String {
    debug_assert!(valid_name(&doc.name), "document name must stay valid");
    let mut out = String::new();
    out.push_str(&format!("name={}\n", doc.name));
    out.push_str(&format!("scheme={}\n", doc.config.scheme));
    out.push_str(&format!("bs2_plus={}\n", doc.config.plus_setting));
    out.push_str(&format!("bs2_minus={}\n", doc.config.minus_setting));
    let t = doc.config.transmissivity();
    if t != std::f64::consts::FRAC_1_SQRT_2 {
        out.push_str(&format!("transmissivity={t}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    const MINIMAL: &str = "name=eq1\nscheme=A\nbs2_plus=out\nbs2_minus=out";

    #[test]
    fn parses_a_minimal_document() {
        let doc = parse_experiment(MINIMAL).unwrap();
        assert_eq!(doc.name, "eq1");
        assert_eq!(doc.config.scheme, Scheme::A);
        assert_eq!(doc.config.plus_setting, BsSetting::Out);
        assert_eq!(doc.config.minus_setting, BsSetting::Out);
        assert_eq!(doc.config.transmissivity(), FRAC_1_SQRT_2);
    }

    #[test]
    fn duplicate_key_is_reported_with_its_line() {
        let text = format!("{MINIMAL}\nscheme=B");
        assert_eq!(
            parse_experiment(&text),
            Err(ParseError::DuplicateKey {
                line: 5,
                key: "scheme"
            })
        );
    }

    #[test]
    fn transmissivity_range() {
        let text = format!("{MINIMAL}\ntransmissivity=1.5");
        assert_eq!(
            parse_experiment(&text),
            Err(ParseError::OutOfRange {
                line: 5,
                key: "transmissivity",
                value: 1.5
            })
        );
        let text = format!("{MINIMAL}\ntransmissivity=-0.25");
        assert!(matches!(
            parse_experiment(&text),
            Err(ParseError::OutOfRange { line: 5, .. })
        ));
    }

    #[test]
    fn sqrt2_literal_is_exact() {
        let text = format!("{MINIMAL}\ntransmissivity=1/sqrt2");
        let doc = parse_experiment(&text).unwrap();
        assert_eq!(doc.config.transmissivity(), FRAC_1_SQRT_2);
    }

    #[test]
    fn unknown_and_malformed_keys() {
        let text = format!("{MINIMAL}\nsplitter=maybe");
        assert_eq!(
            parse_experiment(&text),
            Err(ParseError::UnknownKey {
                line: 5,
                key: "splitter".into()
            })
        );
        // Keys are case-sensitive.
        let text = "Name=eq1\nscheme=A\nbs2_plus=out\nbs2_minus=out";
        assert!(matches!(
            parse_experiment(text),
            Err(ParseError::UnknownKey { line: 1, .. })
        ));
    }

    #[test]
    fn malformed_values() {
        let text = "name=x\nscheme=C\nbs2_plus=out\nbs2_minus=out";
        assert!(matches!(
            parse_experiment(text),
            Err(ParseError::MalformedValue {
                line: 2,
                key: "scheme",
                ..
            })
        ));
        let text = "name=x\nscheme=A\nbs2_plus=inserted\nbs2_minus=out";
        assert!(matches!(
            parse_experiment(text),
            Err(ParseError::MalformedValue {
                line: 3,
                key: "bs2_plus",
                ..
            })
        ));
        let text = format!("{MINIMAL}\ntransmissivity=half");
        assert!(matches!(
            parse_experiment(&text),
            Err(ParseError::MalformedValue {
                line: 5,
                key: "transmissivity",
                ..
            })
        ));
        let text = format!("{MINIMAL}\ntransmissivity=nan");
        assert!(parse_experiment(&text).is_err());
    }

    #[test]
    fn missing_required_key() {
        let text = "name=x\nscheme=A\nbs2_plus=out";
        assert_eq!(
            parse_experiment(text),
            Err(ParseError::MissingKey {
                key: "bs2_minus",
                end_line: 3
            })
        );
        assert!(matches!(
            parse_experiment(""),
            Err(ParseError::MissingKey {
                key: "name",
                end_line: 0
            })
        ));
    }

    #[test]
    fn missing_delimiter() {
        let text = "name=x\nscheme A";
        assert_eq!(
            parse_experiment(text),
            Err(ParseError::MissingDelimiter { line: 2 })
        );
    }

    #[test]
    fn name_validation() {
        let text = "name=\nscheme=A\nbs2_plus=out\nbs2_minus=out";
        assert!(matches!(
            parse_experiment(text),
            Err(ParseError::MalformedValue {
                line: 1,
                key: "name",
                ..
            })
        ));
        let text = "name=bad\tname\nscheme=A\nbs2_plus=out\nbs2_minus=out";
        assert!(matches!(
            parse_experiment(text),
            Err(ParseError::MalformedValue {
                line: 1,
                key: "name",
                ..
            })
        ));
    }

    #[test]
    fn comments_blanks_and_crlf() {
        let text = "# the removed-splitter run\r\nname=eq1 # alias\r\n\r\nscheme=A\r\nbs2_plus=out\r\nbs2_minus=out\r\n";
        let doc = parse_experiment(text).unwrap();
        assert_eq!(doc.name, "eq1");
        assert_eq!(doc.config.scheme, Scheme::A);
    }

    #[test]
    fn serialization_is_canonical() {
        let doc = parse_experiment(MINIMAL).unwrap();
        assert_eq!(
            serialize_experiment(&doc),
            "name=eq1\nscheme=A\nbs2_plus=out\nbs2_minus=out\n"
        );
        let text = format!("{MINIMAL}\ntransmissivity=0.5");
        let doc = parse_experiment(&text).unwrap();
        assert_eq!(
            serialize_experiment(&doc),
            "name=eq1\nscheme=A\nbs2_plus=out\nbs2_minus=out\ntransmissivity=0.5\n"
        );
    }

    #[test]
    fn round_trip_is_identity() {
        for scheme in ["A", "B"] {
            for plus in ["in", "out"] {
                for minus in ["in", "out"] {
                    for t_line in ["", "\ntransmissivity=0.25", "\ntransmissivity=1/sqrt2"] {
                        let text = format!(
                            "name=case\nscheme={scheme}\nbs2_plus={plus}\nbs2_minus={minus}{t_line}"
                        );
                        let doc = parse_experiment(&text).unwrap();
                        let again = parse_experiment(&serialize_experiment(&doc)).unwrap();
                        assert_eq!(doc, again);
                    }
                }
            }
        }
    }
}
