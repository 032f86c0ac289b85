//! Fixed-precision float output. Every serialized float is rounded to 12
//! significant digits so that reports diff cleanly.

use serde::Serializer;

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds to 12 significant digits; `-0.0` becomes `0.0`.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let r: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Text form of [`round_sig`], as used in plain and CSV output.
pub fn format_sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r = round_sig(x);
    if r != 0.0 && !(1e-4..1e15).contains(&r.abs()) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

pub fn sig12<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig(*x))
}

pub fn sig12_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&round_sig(*v)),
        None => s.serialize_none(),
    }
}

pub fn sig12_vec<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|&x| round_sig(x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round_sig(1.0 / 3.0), 0.333333333333);
        assert_eq!(round_sig(2f64.sqrt()).to_string(), "1.41421356237");
        assert_eq!(round_sig(-0.0), 0.0);
        assert_eq!(round_sig(-1e-17), -1e-17);
        assert_eq!(format_sig(2.0 + 1e-14), "2");
        assert_eq!(format_sig(-3.0), "-3");
        assert_eq!(format_sig(4.440892098500626e-16), "4.4408920985e-16");
        assert_eq!(format_sig(1.2e-7), "1.2e-7");
        assert_eq!(format_sig(0.001), "0.001");
        assert_eq!(format_sig(123_456_789.123_456_7), "123456789.123");
        assert_eq!(format_sig(f64::NAN), "nan");
    }
}
