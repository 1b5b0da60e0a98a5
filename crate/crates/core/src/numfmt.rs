//! `%g`-style formatting with a fixed number of significant digits.

/// Formats `x` like C's `printf("%.{digits}g", x)`.
pub fn format_g(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    // Round first so the exponent reflects the rounded mantissa (9.9999 -> 1e1).
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        strip_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::format_g;

    #[test]
    fn matches_printf_g() {
        // Expected strings from printf("%.9g") / printf("%.12g").
        assert_eq!(format_g(1.0, 9), "1");
        assert_eq!(format_g(-0.5, 9), "-0.5");
        assert_eq!(format_g(std::f64::consts::PI, 9), "3.14159265");
        assert_eq!(format_g(std::f64::consts::PI, 12), "3.14159265359");
        assert_eq!(format_g(1.0e-5, 9), "1e-05");
        assert_eq!(format_g(1.234e-4, 9), "0.0001234");
        assert_eq!(format_g(123456789.0, 9), "123456789");
        assert_eq!(format_g(1234567890.0, 9), "1.23456789e+09");
        assert_eq!(format_g(9.9999999996, 9), "10");
        assert_eq!(format_g(250.0, 12), "250");
        assert_eq!(format_g(0.0, 9), "0");
        assert_eq!(format_g(6.123233995736766e-17, 12), "6.12323399574e-17");
    }

    #[test]
    fn reparses_within_precision() {
        for &x in &[1.0e-9, 0.1, 17.324, -523.1234567891, 7.0e12] {
            let y: f64 = format_g(x, 12).parse().unwrap();
            assert!((x - y).abs() <= 1e-11 * x.abs());
        }
    }
}
