//! Locale-free CSV rendering; numbers carry 12 significant digits.

const SIG_DIGITS: i32 = 12;

/// `%.12g`-style rendering; values below 1e-14 in magnitude print as `0`.
pub fn number(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x.abs() < 1e-14 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..SIG_DIGITS).contains(&exp) {
        let decimals = (SIG_DIGITS - 1 - exp).max(0) as usize;
        trim(format!("{x:.decimals$}"))
    } else {
        let s = format!("{:.*e}", (SIG_DIGITS - 1) as usize, x);
        let (mantissa, exponent) = s.split_once('e').expect("exponent");
        format!("{}e{exponent}", trim(mantissa.to_owned()))
    }
}

fn trim(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_owned()
    } else {
        s
    }
}

/// CSV document with a header line; fields are quoted where needed.
pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}
