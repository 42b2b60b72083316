use std::collections::{BTreeSet, HashSet};

use serde_json::json;

use super::report::{equal, error_witness, Report, Timer};
use crate::diagram::{catalan, class_size, double_factorial_odd, word_text, Diagram};
use crate::error::Result;
use crate::field::RationalFunction;
use crate::projector::{coeff_explicit, f_explicit, f_kernel, f_recursive, kernel_support, u_set};

/// Largest `n` for the exhaustive permutation-pair searches.
pub const ORBIT_SEARCH_MAX: usize = 4;

/// Class uniformity of `f_n`, and for small `n` the permutation-orbit facts
/// behind it: permutations preserve the through-strand count, and any two
/// diagrams with the same count are related by `y = α x β`.
pub fn check_class_invariance(n: usize) -> Result<Report> {
    let timer = Timer::start();
    let mut r = Report::new("class_invariance", n);
    let f = f_recursive(n)?;
    match f.class_decompose() {
        Ok(table) => {
            r.record("prop4_3.uniform", "f_recursive", Ok(())).detail = Some(json!(table.render(&format!("f_{n}"))));
            let explicit = f_explicit(n)?;
            let name = format!("f_{n}");
            let outcome = if table == explicit {
                Ok(())
            } else {
                Err(json!({ "lhs": table.render(&name), "rhs": explicit.render(&name) }))
            };
            r.record("cor5_4.table", "f_recursive", outcome);
        }
        Err(e) => {
            r.record("prop4_3.uniform", "f_recursive", Err(error_witness(e)));
        }
    }
    if n <= ORBIT_SEARCH_MAX {
        let perms = Diagram::enumerate(n, Some(n))?;
        for l in 0..=n / 2 {
            let k = n - 2 * l;
            let class = Diagram::enumerate(n, Some(k))?;
            let members: HashSet<Diagram> = class.iter().copied().collect();
            let mut preserve = Ok(());
            let mut transitive = Ok(());
            'outer: for x in &class {
                let mut orbit = HashSet::new();
                for a in &perms {
                    let ax = a.compose(x)?;
                    for b in &perms {
                        let c = ax.diagram.compose(b)?;
                        if ax.loops + c.loops != 0 || c.diagram.through_strands() != k {
                            preserve = Err(json!({
                                "x": x.to_text(), "alpha": a.to_text(), "beta": b.to_text(),
                            }));
                            break 'outer;
                        }
                        orbit.insert(c.diagram);
                    }
                }
                if let Some(y) = class.iter().find(|y| !orbit.contains(y)) {
                    transitive = Err(json!({ "x": x.to_text(), "y": y.to_text() }));
                    break;
                }
            }
            debug_assert!(members.len() == class.len());
            let at = format!("k={k}");
            r.record("lemma4_1.preserve", &at, preserve).detail = Some(json!({ "class_size": class.len() }));
            r.record("lemma4_2.transitive", &at, transitive).detail = Some(json!({ "pairs": class.len() * class.len() }));
        }
    }
    timer.stamp(&mut r);
    Ok(r)
}

/// `-2 / (m (d + 2m - 4))`, the common `U^i` sum inside `m` strands.
fn usum_target(m: usize) -> RationalFunction {
    let m = m as i64;
    let den = &(&RationalFunction::var() + &RationalFunction::from_int(2 * m - 4)) * &RationalFunction::from_int(m);
    RationalFunction::from_int(-2).checked_div(&den).expect("nonzero linear factor")
}

fn usum(kernel: &crate::Element, m: usize, i: usize) -> Result<RationalFunction> {
    let mut sum = RationalFunction::from_int(0);
    for (_, y) in u_set(m, i)? {
        if let Some(c) = kernel.coeff(&y) {
            sum = &sum + c;
        }
    }
    Ok(sum)
}

/// The kernel factors `f_m^K` for `2 <= m <= n`: support is exactly the
/// `2^m - 1` distinct diagrams of `A_m`, and the `U^i` sums agree.
pub fn check_kernel(n: usize) -> Result<Report> {
    let timer = Timer::start();
    let mut r = Report::new("kernel", n);
    for m in 2..=n {
        let at = format!("n={m}");
        let words = kernel_support(m)?;
        let set: BTreeSet<Diagram> = words.iter().map(|(_, d)| *d).collect();
        let expected = (1usize << m) - 1;
        let distinct = if set.len() == expected && words.len() == expected {
            Ok(())
        } else {
            Err(json!({ "words": words.len(), "distinct": set.len(), "expected": expected }))
        };
        r.record("eq7.distinct", &at, distinct);
        let kernel = f_kernel(m)?;
        let support: BTreeSet<Diagram> = kernel.support().copied().collect();
        let outcome = if support == set {
            Ok(())
        } else {
            let extra = support.difference(&set).next().map(|d| d.to_text());
            let missing = set.difference(&support).next().map(|d| d.to_text());
            Err(json!({ "outside_set": extra, "missing": missing }))
        };
        r.record("eq7.support", &at, outcome).detail = Some(json!({ "terms": kernel.len() }));
        let target = usum_target(m);
        for i in 1..m {
            r.record("prop5_3.usum", format!("n={m},i={i}"), equal(&usum(&kernel, m, i)?, &target));
        }
    }
    timer.stamp(&mut r);
    Ok(r)
}

/// The decomposition of canonical elements of `n + 1` strands as `X Y` with
/// `X` on `n` strands and `Y` in `A_{n+1}`.
pub fn check_structural_lemmas(n: usize) -> Result<Report> {
    let timer = Timer::start();
    let mut r = Report::new("structural", n);
    let m = n + 1;
    let kernel = f_kernel(m)?;
    let target = usum_target(m);
    let mut sums = Vec::with_capacity(n);
    for i in 1..=n {
        let s = usum(&kernel, m, i)?;
        r.record("prop5_3.usum", format!("i={i}"), equal(&s, &target));
        sums.push(s);
        for (w, y) in u_set(m, i)? {
            let vertical = (1..i).all(|j| y.is_vertical(j));
            let outcome = if y.through_strands() == n - 1 && y.caps() == vec![(i, i + 1)] && vertical {
                Ok(())
            } else {
                Err(json!({ "y": word_text(&w), "diagram": y.to_text() }))
            };
            r.record("lemma5_1.shape", format!("i={i},Y={}", word_text(&w)), outcome);
        }
    }

    let small = Diagram::enumerate(n, None)?
        .into_iter()
        .map(|x| x.embed(m))
        .collect::<Result<Vec<_>>>()?;
    let a_set = kernel_support(m)?;
    for k in (m % 2..n).step_by(2) {
        let ce = Diagram::canonical_k_element(m, k)?;
        let admissible: Vec<usize> = (k + 1..=n).step_by(2).collect();
        let mut members: HashSet<Diagram> = HashSet::new();
        for &i in &admissible {
            for (w, y) in u_set(m, i)? {
                members.insert(y);
                let found: Vec<&Diagram> = small
                    .iter()
                    .filter(|x| x.through_strands() == k + 2)
                    .filter(|x| matches!(x.compose(&y), Ok(c) if c.loops == 0 && c.diagram == ce))
                    .collect();
                let at = format!("k={k},i={i},Y={}", word_text(&w));
                let outcome = if found.len() == 1 {
                    Ok(())
                } else {
                    Err(json!({ "solutions": found.iter().map(|x| x.to_text()).collect::<Vec<_>>() }))
                };
                let c = r.record("lemma5_2.unique", at, outcome);
                if let [x] = found.as_slice() {
                    c.detail = Some(json!({ "x": x.to_text() }));
                }
            }
        }

        let mut solutions = 0usize;
        let mut converse = Ok(());
        for x in &small {
            for (w, y) in &a_set {
                let c = x.compose(y)?;
                if c.loops != 0 || c.diagram != ce {
                    continue;
                }
                solutions += 1;
                if converse.is_ok() && (x.through_strands() != k + 2 || !members.contains(y)) {
                    converse = Err(json!({ "x": x.to_text(), "y": word_text(w) }));
                }
            }
        }
        r.record("lemma5_1.converse", format!("k={k}"), converse).detail = Some(json!({ "solutions": solutions }));

        // coefficient of CE_{n+1}^k = coeff_n([k+1]_n) * sum over admissible U^i
        let total = admissible.iter().fold(RationalFunction::from_int(0), |acc, &i| &acc + &sums[i - 1]);
        let lhs = coeff_explicit(m, (m - k) / 2)?;
        let rhs = &coeff_explicit(n, (n - k - 1) / 2)? * &total;
        r.record("prop5_3.ce", format!("k={k}"), equal(&lhs, &rhs));
    }
    timer.stamp(&mut r);
    Ok(r)
}

/// Basis counts: all diagrams, planar diagrams, through-strand classes, and
/// the kernel set `A_n`.
pub fn check_dimensions(n: usize) -> Result<Report> {
    let timer = Timer::start();
    let mut r = Report::new("dimensions", n);
    let all = Diagram::enumerate(n, None)?;
    let count = |got: usize, want: u128| {
        if got as u128 == want { Ok(()) } else { Err(json!({ "counted": got, "expected": want.to_string() })) }
    };
    r.record("dim.total", format!("{}", all.len()), count(all.len(), double_factorial_odd(n)));
    let planar = all.iter().filter(|d| d.is_planar()).count();
    r.record("dim.planar", format!("{planar}"), count(planar, catalan(n)));
    let mut sum = 0u128;
    for l in 0..=n / 2 {
        let k = n - 2 * l;
        let by_filter = all.iter().filter(|d| d.through_strands() == k).count();
        let listed = Diagram::enumerate(n, Some(k))?.len();
        let want = class_size(n, l);
        sum += want;
        let outcome = count(by_filter, want).and(count(listed, want));
        r.record("dim.class", format!("k={k},size={want}"), outcome);
    }
    r.record("dim.class_sum", format!("{sum}"), count(all.len(), sum));
    let a: HashSet<Diagram> = kernel_support(n)?.into_iter().map(|(_, d)| d).collect();
    r.record("dim.kernel", format!("{}", a.len()), count(a.len(), (1u128 << n) - 1));
    timer.stamp(&mut r);
    Ok(r)
}
