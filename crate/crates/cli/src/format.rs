//! Deterministic numeric formatting and the CSV/JSON value encodings.
//!
//! All values are printed with 12 significant digits in plain decimal.
//! JSON documents carry the same rounded values, so the two encodings of
//! one command parse back to identical numbers.

use vbslab_core::linalg::{ComplexMatrix, C64};

/// 12-significant-digit decimal representation.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0.000000000000".to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (11 - exponent).clamp(0, 30) as usize;
    let s = format!("{x:.decimals$}");
    // Rounding can bump the value across a power of ten
    // (0.0999... -> 0.100...), changing how many decimals 12 significant
    // digits need; reformat against the rounded value's exponent.
    let rounded: f64 = s.parse().unwrap_or(x);
    if rounded == 0.0 {
        return s;
    }
    let new_exponent = rounded.abs().log10().floor() as i32;
    if new_exponent == exponent {
        s
    } else {
        let decimals = (11 - new_exponent).clamp(0, 30) as usize;
        format!("{x:.decimals$}")
    }
}

/// The same rounded value as an `f64`, for embedding into JSON.
pub fn rounded(x: f64) -> f64 {
    fmt_sig(x).parse().unwrap_or(0.0)
}

/// Complex entry in the CSV cell form `re+imj`.
pub fn fmt_complex(z: C64) -> String {
    let sign = if z.im.is_sign_negative() && z.im != 0.0 {
        '-'
    } else {
        '+'
    };
    format!("{}{}{}j", fmt_sig(z.re), sign, fmt_sig(z.im.abs()))
}

/// Matrix as nested JSON arrays of [re, im] pairs, row-major.
pub fn matrix_json(m: &ComplexMatrix) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = (0..m.rows())
        .map(|i| {
            let row: Vec<serde_json::Value> = (0..m.cols())
                .map(|j| {
                    let z = m.get(i, j);
                    serde_json::json!([rounded(z.re), rounded(z.im)])
                })
                .collect();
            serde_json::Value::Array(row)
        })
        .collect();
    serde_json::Value::Array(rows)
}

/// Matrix rows in CSV form: `m,<row>,<cell>,...` with `re+imj` cells.
pub fn matrix_csv_rows(m: &ComplexMatrix, out: &mut String) {
    for i in 0..m.rows() {
        out.push_str(&format!("m,{i}"));
        for j in 0..m.cols() {
            out.push(',');
            out.push_str(&fmt_complex(m.get(i, j)));
        }
        out.push('\n');
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(fmt_sig(0.0), "0.000000000000");
        assert_eq!(fmt_sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_sig(1.584962500721156), "1.58496250072");
        assert_eq!(fmt_sig(-4.0 / 3.0), "-1.33333333333");
        // Small magnitudes keep 12 significant digits.
        assert_eq!(fmt_sig(1.0 / 6561.0), "0.000152415790276");
    }

    #[test]
    fn rounding_edge_near_power_of_ten() {
        // 0.09999999999999 rounds up across the exponent boundary.
        let s = fmt_sig(0.09999999999999);
        assert_eq!(s, "0.100000000000");
    }

    #[test]
    fn complex_cells() {
        assert_eq!(
            fmt_complex(C64::new(0.25, -0.5)),
            "0.250000000000-0.500000000000j"
        );
        assert_eq!(
            fmt_complex(C64::new(-1.0, 0.0)),
            "-1.00000000000+0.000000000000j"
        );
    }

    #[test]
    fn rounded_round_trips_through_string() {
        for &x in &[1.0 / 3.0, 2.0f64.sqrt(), -0.1234567890123] {
            assert_eq!(rounded(x), fmt_sig(x).parse::<f64>().unwrap());
        }
    }
}
