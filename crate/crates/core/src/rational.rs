//! Exact rationals used for all reported fractions.

pub type Rational = num_rational::Ratio<i64>;

/// `count / total` as an exact rational. `total` must be nonzero.
pub fn fraction(count: usize, total: usize) -> Rational {
    Rational::new(count as i64, total as i64)
}

/// Always renders `num/den`, including integers (`1/1`, `0/1`).
pub fn render(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `a/b` or an integer.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            (d != 0).then(|| Rational::new(n, d))
        }
        None => s.parse().ok().map(Rational::from_integer),
    }
}

/// Parses a decimal such as `0.1` exactly (`1/10`), or falls back to [`parse`].
pub fn parse_decimal(s: &str) -> Option<Rational> {
    let s = s.trim();
    let Some((int, frac)) = s.split_once('.') else {
        return parse(s);
    };
    if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) || frac.len() > 15 {
        return None;
    }
    let negative = int.starts_with('-');
    let int_part: i64 = if int.is_empty() || int == "-" {
        0
    } else {
        int.parse().ok()?
    };
    let den = 10i64.checked_pow(frac.len() as u32)?;
    let f: i64 = frac.parse().ok()?;
    let mag = int_part.abs().checked_mul(den)?.checked_add(f)?;
    Some(Rational::new(if negative { -mag } else { mag }, den))
}
