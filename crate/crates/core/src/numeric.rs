//! Multiprecision complex helpers shared by the series and closed-form
//! evaluators.

use rug::float::Constant;
use rug::{Complex, Float};

use crate::exact::Rational;

pub const DEFAULT_DIGITS: u32 = 50;

/// Working precision in bits for `digits` significant decimal digits, with a
/// few guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    ((digits as f64) * std::f64::consts::LOG2_10).ceil() as u32 + 16
}

/// Magnitude below which a denominator is treated as vanishing.
pub fn pole_threshold(bits: u32) -> f64 {
    2f64.powi(-((bits as i32) * 3 / 4))
}

pub fn from_rational(r: &Rational, prec: u32) -> Complex {
    Complex::with_val(prec, r)
}

pub fn from_f64(re: f64, im: f64, prec: u32) -> Complex {
    Complex::with_val(prec, (re, im))
}

pub fn abs_f64(z: &Complex) -> f64 {
    Float::with_val(z.prec().0, z.abs_ref()).to_f64()
}

pub fn abs(z: &Complex) -> Float {
    Float::with_val(z.prec().0, z.abs_ref())
}

/// `|a − b| / |b|`, falling back to the absolute error when `b` vanishes.
pub fn relative_error(a: &Complex, b: &Complex) -> f64 {
    let diff = abs(&Complex::with_val(a.prec(), a - b));
    let scale = abs(b);
    if scale.is_zero() {
        diff.to_f64()
    } else {
        Float::with_val(diff.prec(), &diff / &scale).to_f64()
    }
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// `10^(−k)` as an `f64`.
pub fn ten_pow_neg(k: u32) -> f64 {
    10f64.powi(-(k as i32))
}

/// Distance of `w` from the principal logarithm cut `(−∞, 0]`.
pub fn distance_to_log_cut(w: &Complex) -> f64 {
    let re = w.real().to_f64();
    let im = w.imag().to_f64();
    if re <= 0.0 {
        im.abs()
    } else {
        (re * re + im * im).sqrt()
    }
}

/// Decimal rendering with `digits` significant digits, trailing zeros
/// trimmed; the imaginary part is omitted when it is exactly zero.
pub fn fmt_complex(z: &Complex, digits: usize) -> String {
    let re = fmt_float(z.real(), digits);
    if z.imag().is_zero() {
        re
    } else {
        let im = fmt_float(z.imag(), digits);
        if let Some(abs) = im.strip_prefix('-') {
            format!("{re} - {abs}i")
        } else {
            format!("{re} + {im}i")
        }
    }
}

pub fn fmt_float(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let s = x.to_string_radix(10, Some(digits));
    let (mantissa, exp) = match s.split_once('e') {
        Some((m, e)) => (m.to_string(), e.parse::<i32>().unwrap_or(0)),
        None => (s.clone(), 0),
    };
    let neg = mantissa.starts_with('-');
    let m = mantissa.trim_start_matches('-');
    let (int_part, frac_part) = m.split_once('.').unwrap_or((m, ""));
    let mut digits_str = format!("{int_part}{frac_part}");
    let mut point = int_part.len() as i32 + exp;
    // strip leading zeros of the digit string
    while digits_str.len() > 1 && digits_str.starts_with('0') {
        digits_str.remove(0);
        point -= 1;
    }
    let digits_str = digits_str.trim_end_matches('0');
    let body = if digits_str.is_empty() {
        "0".to_string()
    } else if point <= 0 {
        if point < -20 {
            return format!(
                "{}{}e{}",
                if neg { "-" } else { "" },
                sci(digits_str),
                point - 1
            );
        }
        format!("0.{}{}", "0".repeat((-point) as usize), digits_str)
    } else if point as usize >= digits_str.len() {
        if point > 40 {
            return format!(
                "{}{}e{}",
                if neg { "-" } else { "" },
                sci(digits_str),
                point - 1
            );
        }
        format!(
            "{}{}",
            digits_str,
            "0".repeat(point as usize - digits_str.len())
        )
    } else {
        let (a, b) = digits_str.split_at(point as usize);
        format!("{a}.{b}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn sci(digits: &str) -> String {
    if digits.len() == 1 {
        digits.to_string()
    } else {
        format!("{}.{}", &digits[..1], &digits[1..])
    }
}
