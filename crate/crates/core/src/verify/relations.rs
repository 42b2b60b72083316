use num_traits::One;
use serde_json::Value;

use super::report::{diff_result, equal, error_witness, Report, Timer};
use crate::algebra::Element;
use crate::diagram::Generator::{self, E, V};
use crate::error::Result;
use crate::field::{BigRational, RationalFunction};
use crate::projector::{alpha, coeff_ce_recursive, coeff_explicit, x, y, z};

fn word(n: usize, gens: &[Generator]) -> Result<Element> {
    let mut acc = Element::identity(n)?;
    for &g in gens {
        acc = acc.mul(&Element::generator(n, g)?)?;
    }
    Ok(acc)
}

fn same(n: usize, lhs: &[Generator], rhs: &[Generator]) -> std::result::Result<(), Value> {
    diff_result(word(n, lhs), word(n, rhs))
}

/// `i±1` neighbours of `i` among the generator indices `1..n`.
fn neighbours(n: usize, i: usize) -> impl Iterator<Item = usize> {
    [i.checked_sub(1), Some(i + 1)].into_iter().flatten().filter(move |&j| j >= 1 && j < n)
}

/// The defining relations of the generators, plus the derived identities
/// used by the projector recursion.
pub fn check_relations(n: usize) -> Result<Report> {
    let timer = Timer::start();
    let mut r = Report::new("relations", n);
    let d = RationalFunction::var();
    for i in 1..n {
        let at = format!("i={i}");
        r.record("eq1.unit", &at, same(n, &[Generator::Identity, E(i)], &[E(i)]).and(same(n, &[E(i), Generator::Identity], &[E(i)])));
        r.record("eq1.e_sq", &at, diff_result(word(n, &[E(i), E(i)]), word(n, &[E(i)]).map(|e| e.scale(&d))));
        r.record("eq1.v_sq", &at, same(n, &[V(i), V(i)], &[]));
        r.record("eq1.e_v_absorb", &at, same(n, &[E(i), V(i)], &[E(i)]).and(same(n, &[V(i), E(i)], &[E(i)])));
        for j in neighbours(n, i) {
            let at = format!("i={i},j={j}");
            r.record("eq1.e_braid", &at, same(n, &[E(i), E(j), E(i)], &[E(i)]));
            r.record("eq1.e_v_e", &at, same(n, &[E(i), V(j), E(i)], &[E(i)]));
            r.record("ident_iii.evv", &at, same(n, &[E(i), V(j), V(i)], &[E(i), E(j)]));
            r.record("ident_iii.vve", &at, same(n, &[V(i), V(j), E(i)], &[E(j), E(i)]));
            r.record("ident_iii.eev", &at, same(n, &[E(i), E(j), V(i)], &[E(i), V(j)]));
            r.record("ident_iii.vee", &at, same(n, &[V(i), E(j), E(i)], &[V(j), E(i)]));
        }
        if i + 1 < n {
            r.record("eq1.v_braid", &at, same(n, &[V(i), V(i + 1), V(i)], &[V(i + 1), V(i), V(i + 1)]));
            r.record("eq1.mixed_braid", &at, same(n, &[V(i), E(i + 1), V(i)], &[V(i + 1), E(i), V(i + 1)]));
        }
        for j in 1..n {
            if i.abs_diff(j) < 2 {
                continue;
            }
            let at = format!("i={i},j={j}");
            if i < j {
                r.record("eq1.e_far", &at, same(n, &[E(i), E(j)], &[E(j), E(i)]));
                r.record("eq1.v_far", &at, same(n, &[V(i), V(j)], &[V(j), V(i)]));
            }
            r.record("eq1.ev_far", &at, same(n, &[E(i), V(j)], &[V(j), E(i)]));
        }
    }
    timer.stamp(&mut r);
    Ok(r)
}

fn ratio(p: i64, q: i64) -> RationalFunction {
    RationalFunction::from_rational(BigRational::new(p.into(), q.into()))
}

/// `d + c` as a rational function.
fn lin(c: i64) -> RationalFunction {
    &RationalFunction::var() + &RationalFunction::from_int(c)
}

/// Identities between the scalar sequences for `1 <= i <= max_i`.
pub fn check_scalars(max_i: usize) -> Result<Report> {
    let timer = Timer::start();
    let mut r = Report::new("scalars", max_i);
    for i in 1..=max_i {
        let at = format!("i={i}");
        let ii = i as i64;
        // (x_i + y_i α_{i-1}) / (-z_i) = (d-2)/(i(d+2i-4)) = x_{i-1} + y_{i-1}
        let lhs = (&x(i) + &(&y(i) * &alpha(i - 1))).checked_div(&-z(i));
        let mid = (&lin(-2) * &ratio(1, ii)).checked_div(&lin(2 * ii - 4));
        let rhs = &x(i - 1) + &y(i - 1);
        let outcome = match (lhs, mid) {
            (Ok(lhs), Ok(mid)) => equal(&lhs, &mid).and(equal(&mid, &rhs)),
            (Err(e), _) | (_, Err(e)) => Err(error_witness(e)),
        };
        r.record("eq5.scalar", &at, outcome);
        r.record("ident.i", &at, equal(&(&z(i) * &x(i - 1)), &x(i)));
        r.record("ident.ii", &at, equal(&(&(&y(i) + &z(i)) * &y(i - 1)), &(&y(i) * &z(i - 1))));
        // α_{i-1} = (d+i-3)(d+2i-2) / (i(d+2i-4))
        let closed = (&(&lin(ii - 3) * &lin(2 * ii - 2)) * &ratio(1, ii)).checked_div(&lin(2 * ii - 4));
        r.record("alpha.closed_form", &at, closed.map_err(error_witness).and_then(|c| equal(&alpha(i - 1), &c)));
    }
    timer.stamp(&mut r);
    Ok(r)
}

fn factorial(n: usize) -> RationalFunction {
    (1..=n as i64).fold(RationalFunction::one(), |acc, k| &acc * &RationalFunction::from_int(k))
}

/// Closed-form and recursive coefficient laws for `1 <= m <= n`.
pub fn check_coefficients(n: usize) -> Result<Report> {
    let timer = Timer::start();
    let mut r = Report::new("coefficients", n);
    for m in 1..=n {
        r.record("prop4_4.leading", format!("n={m}"), equal(&coeff_explicit(m, 0)?, &factorial(m).inv()?));
        if m >= 2 {
            let at = format!("n={m},k={}", m - 2);
            let expected = (&ratio(-2, 1) * &factorial(m).inv()?).checked_div(&lin(2 * m as i64 - 4))?;
            let rec = coeff_ce_recursive(m, m - 2)?;
            let outcome = equal(&rec, &expected).and(equal(&coeff_explicit(m, 1)?, &expected));
            r.record("prop4_4.value", at, outcome);
        }
        for l in 0..=m / 2 {
            let k = m - 2 * l;
            r.record(
                "prop5_3.recursion",
                format!("n={m},k={k}"),
                equal(&coeff_ce_recursive(m, k)?, &coeff_explicit(m, l)?),
            );
        }
    }
    timer.stamp(&mut r);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_hold_for_small_n() {
        for n in 2..=4 {
            let r = check_relations(n).unwrap();
            assert!(r.passed(), "{}", r.to_text());
        }
        let r = check_relations(3).unwrap();
        assert!(r.find("eq1.e_v_e").any(|c| c.instance == "i=1,j=2" && c.passed));
        let r = check_relations(4).unwrap();
        assert!(r.find("eq1.mixed_braid").any(|c| c.instance == "i=1"));
    }

    #[test]
    fn scalar_identities() {
        let r = check_scalars(12).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.find("eq5.scalar").count(), 12);
    }

    #[test]
    fn coefficient_laws() {
        let r = check_coefficients(10).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }
}
