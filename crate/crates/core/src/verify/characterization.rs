use serde_json::json;

use super::report::{diff, diff_result, error_witness, zero_of, Mode, Report, Timer};
use super::{sample_points, EXACT_IDEMPOTENT_MAX, SAMPLE_POINTS};
use crate::algebra::{Element, NumericElement};
use crate::diagram::Generator::{E, V};
use crate::error::{Error, Result};
use crate::field::{BigRational, RationalFunction};
use crate::projector::{alpha, f_kernel, f_recursive, x, y, z};

/// Checks that `candidate` is idempotent, killed by every `e_k` and fixed by
/// every `v_k`. Idempotence is exact up to [`EXACT_IDEMPOTENT_MAX`] strands
/// and evaluated at seeded sample points beyond.
pub fn check_characterization(n: usize, candidate: &Element, seed: u64) -> Result<Report> {
    if candidate.n() != n {
        return Err(Error::StrandMismatch { left: n, right: candidate.n() });
    }
    let timer = Timer::start();
    let mut r = Report::new("characterization", n);
    let zero = zero_of(candidate);
    for k in 1..n {
        let e = Element::generator(n, E(k))?;
        let v = Element::generator(n, V(k))?;
        let kill = |prod: Result<Element>| {
            diff_result(prod, Ok(zero.clone())).map_err(|w| json!({ "generator": format!("e_{k}"), "term": w }))
        };
        let fix = |prod: Result<Element>| {
            diff_result(prod, Ok(candidate.clone())).map_err(|w| json!({ "generator": format!("v_{k}"), "term": w }))
        };
        r.record("prop2_8.kill_e", format!("k={k},right"), kill(candidate.mul(&e)));
        r.record("prop2_8.kill_e", format!("k={k},left"), kill(e.mul(candidate)));
        r.record("prop2_8.fix_v", format!("k={k},right"), fix(candidate.mul(&v)));
        r.record("prop2_8.fix_v", format!("k={k},left"), fix(v.mul(candidate)));
    }
    if n <= EXACT_IDEMPOTENT_MAX {
        r.record("prop2_8.idempotent", "exact", diff_result(candidate.mul(candidate), Ok(candidate.clone())));
    } else {
        let kernels = (2..=n).map(|m| f_kernel(m)?.embed(n)).collect::<Result<Vec<_>>>()?;
        let mut probes: Vec<&Element> = kernels.iter().collect();
        probes.push(candidate);
        let points = sample_points(n, seed, SAMPLE_POINTS, &probes);
        r.mode = Mode::evaluated(&points);
        r.seed = Some(seed);
        for p in &points {
            let (outcome, route) = match square_at(candidate, &kernels, p) {
                Ok((c, sq, route)) => (diff(&sq, &c), route),
                Err(e) => (Err(error_witness(e)), "none"),
            };
            r.record("prop2_8.idempotent", format!("d={p}"), outcome).detail = Some(json!({ "route": route }));
        }
    }
    timer.stamp(&mut r);
    Ok(r)
}

/// Returns the candidate and its square at `d = p`.
///
/// If the candidate equals the ordered product of the kernel factors at `p`,
/// the square is taken as `c f_2^K ... f_n^K`, which is far cheaper than
/// `c c`; otherwise the direct product is used.
fn square_at(
    candidate: &Element,
    kernels: &[Element],
    p: &BigRational,
) -> Result<(NumericElement, NumericElement, &'static str)> {
    let c = candidate.eval(p)?;
    let factors = kernels.iter().map(|k| k.eval(p)).collect::<Result<Vec<_>>>()?;
    let mut product = factors[0].clone();
    for f in &factors[1..] {
        product = product.mul_at(f, p)?;
    }
    if product == c {
        let mut sq = c.clone();
        for f in &factors {
            sq = sq.mul_at(f, p)?;
        }
        Ok((c, sq, "factorized"))
    } else {
        let sq = c.mul_at(&c, p)?;
        Ok((c, sq, "direct"))
    }
}

/// The seven clauses satisfied by the partial projectors `f_i` inside `n`
/// strands, for `2 <= i <= n`. Clauses mentioning `e_i`, `v_i` or `f_{i+1}`
/// apply only when `i < n`.
pub fn check_lemma2_6(n: usize) -> Result<Report> {
    let timer = Timer::start();
    let mut r = Report::new("lemma2_6", n);
    let zero = Element::zero(n);
    for i in 2..=n {
        let f = f_recursive(i)?.embed(n)?;
        let at = format!("i={i}");
        r.record("lemma2_6.p1", &at, diff_result(f.mul(&f), Ok(f.clone())));
        for k in 1..i {
            let at = format!("i={i},k={k}");
            let e = Element::generator(n, E(k))?;
            let v = Element::generator(n, V(k))?;
            r.record("lemma2_6.p3", &at, diff_result(f.mul(&e), Ok(zero.clone())).and(diff_result(e.mul(&f), Ok(zero.clone()))));
            r.record("lemma2_6.p4", &at, diff_result(f.mul(&v), Ok(f.clone())).and(diff_result(v.mul(&f), Ok(f.clone()))));
        }
        if i == n {
            continue;
        }
        let next = f_recursive(i + 1)?.embed(n)?;
        r.record(
            "lemma2_6.p2",
            &at,
            diff_result(next.mul(&f), Ok(next.clone())).and(diff_result(f.mul(&next), Ok(next.clone()))),
        );
        let e = Element::generator(n, E(i))?;
        let v = Element::generator(n, V(i))?;
        let a = alpha(i - 1);
        let ef = e.mul(&f)?;
        let fe = f.mul(&e)?;
        r.record(
            "lemma2_6.p5",
            &at,
            diff_result(ef.mul(&ef), Ok(ef.scale(&a))).and(diff_result(fe.mul(&fe), Ok(fe.scale(&a)))),
        );
        let fv = f.mul(&v)?;
        let fvf = fv.mul(&f)?;
        let fef = fe.mul(&f)?;
        let lhs = fvf.mul(&fvf);
        let one = RationalFunction::from_int(1);
        let rhs = f.combine(&fef, &x(i - 1), &y(i - 1)).and_then(|s| s.combine(&fvf, &one, &z(i - 1)));
        r.record("lemma2_6.p6", &at, diff_result(lhs, rhs));
        let xy = &x(i - 1) + &y(i - 1);
        r.record(
            "lemma2_6.p7",
            &at,
            diff_result(ef.mul(&fvf), Ok(ef.scale(&xy))).and(diff_result(fvf.mul(&e), Ok(fe.scale(&xy)))),
        );
    }
    timer.stamp(&mut r);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projector::f_explicit;

    #[test]
    fn projector_passes_small_n() {
        for n in 1..=4 {
            let f = f_recursive(n).unwrap();
            let r = check_characterization(n, &f, 1).unwrap();
            assert!(r.passed(), "{}", r.to_text());
            assert_eq!(r.mode, Mode::Exact);
        }
    }

    #[test]
    fn identity_fails_with_e1_witness() {
        let one = Element::identity(2).unwrap();
        let r = check_characterization(2, &one, 1).unwrap();
        assert!(!r.passed());
        let bad = r.failures().next().unwrap();
        assert_eq!(bad.id, "prop2_8.kill_e");
        assert_eq!(bad.witness.as_ref().unwrap()["generator"], "e_1");
    }

    #[test]
    fn explicit_form_passes() {
        let f = f_explicit(4).unwrap().expand().unwrap();
        assert!(check_characterization(4, &f, 1).unwrap().passed());
    }

    #[test]
    fn squaring_routes() {
        let n = 4;
        let f = f_recursive(n).unwrap();
        let kernels: Vec<Element> = (2..=n).map(|m| f_kernel(m).unwrap().embed(n).unwrap()).collect();
        let p = BigRational::new(7.into(), 3.into());
        let (c, sq, route) = square_at(&f, &kernels, &p).unwrap();
        assert_eq!(route, "factorized");
        assert_eq!(c, sq);
        let doubled = f.scale(&RationalFunction::from_int(2));
        let (c, sq, route) = square_at(&doubled, &kernels, &p).unwrap();
        assert_eq!(route, "direct");
        assert_ne!(c, sq);
        assert_eq!(sq, c.scale(&BigRational::from_integer(2.into())));
    }

    #[test]
    fn strand_mismatch_is_an_error() {
        let f = f_recursive(2).unwrap();
        assert!(check_characterization(3, &f, 1).is_err());
    }

    #[test]
    fn lemma_clauses_small_n() {
        for n in 2..=4 {
            let r = check_lemma2_6(n).unwrap();
            assert!(r.passed(), "{}", r.to_text());
        }
        let r = check_lemma2_6(4).unwrap();
        for p in 1..=7 {
            assert!(r.find(&format!("lemma2_6.p{p}")).count() > 0, "p{p}");
        }
    }
}
