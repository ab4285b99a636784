//! Numeric and exact-form rendering shared by the human tables and the
//! JSON-lines output, so both carry identical number strings.

use hardy_core::statevec::{sqrt2_lattice, Amplitude};

/// Significant digits used everywhere a number is printed.
pub const SIG_DIGITS: usize = 12;

/// Format with a fixed number of significant digits, shortest form.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if mag < -4 || mag >= sig as i32 {
        let s = format!("{:.*e}", sig - 1, x);
        match s.find('e') {
            Some(pos) => {
                let (mantissa, exponent) = s.split_at(pos);
                let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
                format!("{mantissa}{exponent}")
            }
            None => s,
        }
    } else {
        let decimals = (sig as i32 - 1 - mag).max(0) as usize;
        let s = format!("{:.*}", decimals, x);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    }
}

/// Default 12-significant-digit formatting.
pub fn num(x: f64) -> String {
    fmt_sig(x, SIG_DIGITS)
}

fn frac(k: i64, den: &str) -> String {
    match k {
        1 => format!("1/{den}"),
        -1 => format!("-1/{den}"),
        _ => format!("{k}/{den}"),
    }
}

/// Exact form of `(m + n√2)/(2√2)` in lowest terms.
fn component_over_2sqrt2(m: i64, n: i64) -> String {
    if m == 0 && n == 0 {
        return "0".to_string();
    }
    if n == 0 {
        if m % 4 == 0 {
            match m / 4 {
                1 => "√2".to_string(),
                -1 => "-√2".to_string(),
                k => format!("{k}√2"),
            }
        } else if m % 2 == 0 {
            frac(m / 2, "√2")
        } else {
            frac(m, "(2√2)")
        }
    } else if m == 0 {
        if n % 2 == 0 {
            format!("{}", n / 2)
        } else {
            frac(n, "2")
        }
    } else {
        format!("({m}{n:+}√2)/(2√2)")
    }
}

fn imaginary(s: &str) -> String {
    match s {
        "1" => "i".to_string(),
        "-1" => "-i".to_string(),
        _ => {
            if let Some(rest) = s.strip_prefix("1/") {
                format!("i/{rest}")
            } else if let Some(rest) = s.strip_prefix("-1/") {
                format!("-i/{rest}")
            } else {
                format!("({s})i")
            }
        }
    }
}

/// Exact annotation of an amplitude on the `√2` lattice at scale `2√2`,
/// e.g. `-1/2`, `i/(2√2)`, `-1/√2`.
pub fn exact_amplitude(amp: Amplitude) -> Option<String> {
    let scale = 2.0 * std::f64::consts::SQRT_2;
    let re = sqrt2_lattice(amp.re * scale)?;
    let im = sqrt2_lattice(amp.im * scale)?;
    let re_str = component_over_2sqrt2(re.0, re.1);
    let im_str = component_over_2sqrt2(im.0, im.1);
    Some(match (re_str.as_str(), im_str.as_str()) {
        ("0", "0") => "0".to_string(),
        (_, "0") => re_str,
        ("0", _) => imaginary(&im_str),
        _ => format!("{re_str} + {}", imaginary(&im_str)),
    })
}

/// Exact annotation of a probability as a fraction over eight, e.g.
/// `1/4` or `1/8`. Canonical-experiment probabilities all reduce this
/// way; anything else gets no annotation.
pub fn exact_probability(p: f64) -> Option<String> {
    let (m, n) = sqrt2_lattice(p * 8.0)?;
    if n != 0 || m < 0 {
        return None;
    }
    if m == 0 {
        return Some("0".to_string());
    }
    let g = gcd(m, 8);
    let (num, den) = (m / g, 8 / g);
    Some(if den == 1 {
        format!("{num}")
    } else {
        format!("{num}/{den}")
    })
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Minimal JSON string escaping.
pub fn escape_json(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// `"null"` or a quoted, escaped JSON string.
pub fn json_opt_str(value: &Option<String>) -> String {
    match value {
        Some(s) => format!("\"{}\"", escape_json(s)),
        None => "null".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hardy_core::statevec::Amplitude as Complex64;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(fmt_sig(0.0, 12), "0");
        assert_eq!(fmt_sig(-0.0, 12), "0");
        assert_eq!(fmt_sig(0.25, 12), "0.25");
        assert_eq!(fmt_sig(-0.5, 12), "-0.5");
        assert_eq!(fmt_sig(1.0, 12), "1");
        assert_eq!(fmt_sig(0.1875, 12), "0.1875");
        assert_eq!(fmt_sig(FRAC_1_SQRT_2, 12), "0.707106781187");
        assert_eq!(fmt_sig(1e-18, 12), "1e-18");
        assert_eq!(fmt_sig(2.5e-17, 12), "2.5e-17");
        assert_eq!(fmt_sig(1234.5, 12), "1234.5");
    }

    #[test]
    fn exact_amplitudes_of_the_canonical_coefficients() {
        let cases = [
            (Complex64::new(0.5, 0.0), "1/2"),
            (Complex64::new(-0.5, 0.0), "-1/2"),
            (Complex64::new(0.0, 0.5), "i/2"),
            (Complex64::new(-FRAC_1_SQRT_2, 0.0), "-1/√2"),
            (Complex64::new(0.0, 0.5 * FRAC_1_SQRT_2), "i/(2√2)"),
            (Complex64::new(-0.5 * FRAC_1_SQRT_2, 0.0), "-1/(2√2)"),
            (Complex64::new(0.0, 0.0), "0"),
            (Complex64::new(std::f64::consts::SQRT_2, 0.0), "√2"),
        ];
        for (amp, want) in cases {
            assert_eq!(exact_amplitude(amp).as_deref(), Some(want), "for {amp}");
        }
        assert_eq!(exact_amplitude(Complex64::new(1.0 / 3.0, 0.0)), None);
    }

    #[test]
    fn exact_probabilities() {
        assert_eq!(exact_probability(0.25).as_deref(), Some("1/4"));
        assert_eq!(exact_probability(0.5).as_deref(), Some("1/2"));
        assert_eq!(exact_probability(0.125).as_deref(), Some("1/8"));
        assert_eq!(exact_probability(0.0).as_deref(), Some("0"));
        assert_eq!(exact_probability(1.0).as_deref(), Some("1"));
        assert_eq!(exact_probability(0.1875), None);
    }

    #[test]
    fn json_escaping() {
        assert_eq!(escape_json("plain"), "plain");
        assert_eq!(escape_json("a\"b\\c"), "a\\\"b\\\\c");
    }
}
