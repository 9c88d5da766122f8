//! Recognition of simple closed forms for display: rationals `p/q` and
//! quadratic surds `(a ± √b)/c` with small integers.

const TOL: f64 = 1e-10;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn squarefree(b: i64) -> bool {
    (2..).take_while(|k| k * k <= b).all(|k| b % (k * k) != 0)
}

fn rational(x: f64) -> Option<String> {
    for q in 1..=240i64 {
        let p = (x * q as f64).round();
        if (x - p / q as f64).abs() < TOL {
            let p = p as i64;
            let g = gcd(p, q).max(1);
            let (p, q) = (p / g, q / g);
            return Some(if q == 1 { format!("{p}") } else { format!("{p}/{q}") });
        }
    }
    None
}

/// Closed form of `x`, if it is a small rational or quadratic surd.
pub fn recognize(x: f64) -> Option<String> {
    if let Some(r) = rational(x) {
        return Some(r);
    }
    for c in 1..=120i64 {
        for b in (2..=500i64).filter(|&b| squarefree(b)) {
            let root = (b as f64).sqrt();
            for sign in [1.0, -1.0] {
                let a = c as f64 * x - sign * root;
                let ar = a.round();
                if (a - ar).abs() < TOL * c as f64 && ar.abs() <= 4.0 * c as f64 {
                    let op = if sign > 0.0 { '+' } else { '−' };
                    let num = format!("{}{op}√{b}", ar as i64);
                    return Some(if c == 1 { num } else { format!("({num})/{c}") });
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recognizes_worked_values() {
        let r5 = 5f64.sqrt();
        assert_eq!(recognize(1.0).as_deref(), Some("1"));
        assert_eq!(recognize(0.4).as_deref(), Some("2/5"));
        assert_eq!(recognize(7.0 / 12.0).as_deref(), Some("7/12"));
        assert_eq!(recognize((5.0 + r5) / 10.0).as_deref(), Some("(5+√5)/10"));
        assert_eq!(recognize((3.0 - r5) / 6.0).as_deref(), Some("(3−√5)/6"));
        assert_eq!(recognize((7.0 + 17f64.sqrt()) / 12.0).as_deref(), Some("(7+√17)/12"));
        assert_eq!(recognize((65.0 - 385f64.sqrt()) / 120.0).as_deref(), Some("(65−√385)/120"));
    }

    #[test]
    fn leaves_transcendental_values_alone() {
        assert_eq!(recognize(std::f64::consts::PI / 7.0), None);
    }
}
