//! Decimal formatting shared by problem files and reports.

/// C's `%.{digits}g`: shortest of fixed and scientific, trailing zeros
/// dropped, exponent with a sign and at least two digits. Negative zero is
/// written as `0`.
pub fn format_g(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_fraction(mantissa), sign, exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp) as usize;
        trim_fraction(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Exact round trip for `f64`.
pub fn format_exact(x: f64) -> String {
    format_g(x, 17)
}

/// Report precision: 12 significant digits, magnitudes below `1e-12`
/// shown as `0`.
pub fn format_report(x: f64) -> String {
    if x.abs() < 1e-12 {
        "0".into()
    } else {
        format_g(x, 12)
    }
}
