//! Binary quadratic forms of negative discriminant: reduced-form enumeration
//! and brute-force representability, the oracle side of the xi_D indicator.

use serde::Serialize;

use crate::error::{Error, Result};

/// A positive definite integral form a*x^2 + b*x*y + c*y^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }
}

pub fn validate_discriminant(d: i64) -> Result<()> {
    if d >= 0 || !(d.rem_euclid(4) == 0 || d.rem_euclid(4) == 1) {
        return Err(Error::InvalidDiscriminant(d));
    }
    Ok(())
}

/// All primitive reduced forms of discriminant d < 0: |b| <= a <= c with
/// b >= 0 whenever |b| = a or a = c. Their number is the class number h(d).
pub fn reduced_forms(d: i64) -> Result<Vec<QuadForm>> {
    validate_discriminant(d)?;
    let mut forms = Vec::new();
    let a_max = (((-d) / 3) as u64).isqrt() as i64;
    for a in 1..=a_max.max(1) {
        for b in -a..=a {
            if (b * b - d) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b - d) / (4 * a);
            if c < a {
                continue;
            }
            if (b.abs() == a || a == c) && b < 0 {
                continue;
            }
            let g = crate::modarith::gcd_i(crate::modarith::gcd_i(a, b) as i64, c);
            if g != 1 {
                continue;
            }
            forms.push(QuadForm { a, b, c });
        }
    }
    Ok(forms)
}

pub fn class_number(d: i64) -> Result<usize> {
    Ok(reduced_forms(d)?.len())
}

/// Whether n is represented by some primitive positive form of discriminant d,
/// by bounded exhaustive search: 4af = (2ax + by)^2 + |d| y^2 caps |y|, and
/// symmetrically for |x|.
pub fn representability(n: u64, d: i64) -> Result<bool> {
    validate_discriminant(d)?;
    if n == 0 {
        return Ok(true);
    }
    let n_i = n as i64;
    for form in reduced_forms(d)? {
        let y_max = ((4 * form.a * n_i / -d) as u64).isqrt() as i64;
        let x_max = ((4 * form.c * n_i / -d) as u64).isqrt() as i64;
        for y in 0..=y_max {
            let x_lo = if y == 0 { 0 } else { -x_max };
            for x in x_lo..=x_max {
                if form.eval(x, y) == n_i {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}
