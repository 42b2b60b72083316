//! Scalar sequences and projector constructions.
//!
//! The symmetric projector `f_n` is the nonzero idempotent killed by every
//! `e_k` and fixed by every `v_k`. It is built three ways here:
//!
//! * [`f_recursive`]: `f_i = x f + y f e f + z f v f` with `f = f_{i-1}`;
//! * [`f_simplified`]: `f_i = f_{i-1} f_i^K`, with the kernel factor
//!   [`f_kernel`] supported on `2^i - 1` diagrams;
//! * [`f_explicit`]: closed-form class coefficients.
//!
//! Everything is symbolic in `d`, so no denominator here ever vanishes.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::{ClassTable, Element};
use crate::diagram::{check_through, Diagram, Generator};
use crate::error::{Error, Result};
use crate::field::{BigRational, Polynomial, RationalFunction};

fn int(c: i64) -> RationalFunction {
    RationalFunction::from_int(c)
}

/// `d + c`.
fn shifted(c: i64) -> RationalFunction {
    RationalFunction::from_poly(Polynomial::linear(c))
}

fn div(a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
    a.checked_div(b).expect("nonzero symbolic denominator")
}

fn factorial(n: usize) -> RationalFunction {
    let f: num_bigint::BigInt = (1..=n as u64).map(num_bigint::BigInt::from).product();
    RationalFunction::from_rational(BigRational::from_integer(f))
}

/// `x_i = 1/(i+1)`.
pub fn x(i: usize) -> RationalFunction {
    RationalFunction::ratio(1, i as i64 + 1)
}

/// `z_i = i/(i+1)`.
pub fn z(i: usize) -> RationalFunction {
    RationalFunction::ratio(i as i64, i as i64 + 1)
}

/// `y_i = -2i / ((i+1)(d+2i-2))`.
pub fn y(i: usize) -> RationalFunction {
    let i = i as i64;
    div(&int(-2 * i), &(&int(i + 1) * &shifted(2 * i - 2)))
}

/// `alpha_i = x_i d + y_i + z_i`.
pub fn alpha(i: usize) -> RationalFunction {
    &(&(&x(i) * &RationalFunction::var()) + &y(i)) + &z(i)
}

/// Factored form `(d+i-2)(d+2i) / ((i+1)(d+2i-2))` of [`alpha`].
pub fn alpha_factored(i: usize) -> RationalFunction {
    let i = i as i64;
    div(&(&shifted(i - 2) * &shifted(2 * i)), &(&int(i + 1) * &shifted(2 * i - 2)))
}

/// Chebyshev polynomials `Δ_i = d Δ_{i-1} - Δ_{i-2}`, `Δ_0 = 1`, `Δ_{-1} = 0`.
pub fn delta(i: usize) -> Polynomial {
    let mut prev = Polynomial::default();
    let mut cur = Polynomial::constant(BigRational::one());
    for _ in 0..i {
        let next = &(&Polynomial::var() * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn check_positive(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("strand count must be at least 1".into()));
    }
    Ok(())
}

/// Values of `d` where some `y_i` with `i < n` has a pole: `0, -2, ..., -2n+4`.
pub fn excluded_points(n: usize) -> Vec<i64> {
    (0..n.saturating_sub(1) as i64).map(|j| -2 * j).collect()
}

fn gen(n: usize, g: Generator) -> Result<Element> {
    Element::generator(n, g)
}

/// Jones-Wenzl projector `P_n` in the planar subalgebra on `n` strands.
pub fn jones_wenzl(n: usize) -> Result<Element> {
    check_positive(n)?;
    let mut p = Element::identity(1)?;
    for i in 1..n {
        // P_{i+1} = P_i - (Δ_{i-1}/Δ_i) P_i e_i P_i, inside i+1 strands
        let pi = p.embed(i + 1)?;
        let ratio = RationalFunction::new(delta(i - 1), delta(i))?;
        let pep = pi.mul(&gen(i + 1, Generator::E(i))?)?.mul(&pi)?;
        p = pi.combine(&pep, &RationalFunction::one(), &-ratio)?;
    }
    Ok(p)
}

/// Which construction of `f_n` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    Recursive,
    Simplified,
    Explicit,
}

impl std::str::FromStr for Construction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "recursive" => Ok(Construction::Recursive),
            "simplified" => Ok(Construction::Simplified),
            "explicit" => Ok(Construction::Explicit),
            _ => Err(Error::InvalidArgument(format!(
                "unknown construction {s:?}; expected recursive, simplified or explicit"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Built {
    Projector(Construction),
    Kernel,
}

type CacheKey = (Built, usize);

#[derive(Default)]
struct ProjectorCache {
    cells: Mutex<HashMap<CacheKey, Arc<OnceLock<Arc<Element>>>>>,
}

impl ProjectorCache {
    fn get_or_build(&self, key: CacheKey, build: impl FnOnce() -> Result<Element>) -> Result<Arc<Element>> {
        let cell = {
            let mut cells = self.cells.lock().expect("cache lock poisoned");
            cells.entry(key).or_default().clone()
        };
        if let Some(v) = cell.get() {
            return Ok(v.clone());
        }
        // builders are deterministic, so a losing racer's value is identical
        let built = Arc::new(build()?);
        Ok(cell.get_or_init(|| built).clone())
    }
}

fn cache() -> &'static ProjectorCache {
    static CACHE: OnceLock<ProjectorCache> = OnceLock::new();
    CACHE.get_or_init(ProjectorCache::default)
}

/// `f_n` by the three-term recursion, as a full element on `n` strands.
pub fn f_recursive(n: usize) -> Result<Arc<Element>> {
    check_positive(n)?;
    cache().get_or_build((Built::Projector(Construction::Recursive), n), || {
        if n == 1 {
            return Element::identity(1);
        }
        let prev = f_recursive(n - 1)?.embed(n)?;
        let i = n - 1;
        let fef = prev.mul(&gen(n, Generator::E(i))?)?.mul(&prev)?;
        let fvf = prev.mul(&gen(n, Generator::V(i))?)?.mul(&prev)?;
        let head = prev.combine(&fef, &x(i), &y(i))?;
        head.combine(&fvf, &RationalFunction::one(), &z(i))
    })
}

/// Kernel factor `f_n^K`, supported on the diagram set `A_n`.
pub fn f_kernel(n: usize) -> Result<Arc<Element>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("kernel factor needs n >= 2, got {n}")));
    }
    cache().get_or_build((Built::Kernel, n), || {
        let i = n - 1;
        let one = Element::identity(n)?;
        let (e_part, v_part) = if n == 2 {
            (gen(2, Generator::E(1))?, gen(2, Generator::V(1))?)
        } else {
            let prev = f_kernel(n - 1)?.embed(n)?;
            (gen(n, Generator::E(i))?.mul(&prev)?, gen(n, Generator::V(i))?.mul(&prev)?)
        };
        let head = one.combine(&e_part, &x(i), &y(i))?;
        head.combine(&v_part, &RationalFunction::one(), &z(i))
    })
}

/// `f_n = f_{n-1} f_n^K`, iterated from `f_1 = 1`.
pub fn f_simplified(n: usize) -> Result<Arc<Element>> {
    check_positive(n)?;
    cache().get_or_build((Built::Projector(Construction::Simplified), n), || {
        if n == 1 {
            return Element::identity(1);
        }
        let kernel = f_kernel(n)?;
        f_simplified(n - 1)?.embed(n)?.mul(&kernel)
    })
}

/// Closed-form coefficient of the class with `n - 2l` through strands:
/// `(-2)^l l! / (n! prod_{i=1..l} (d + 2n - 2 - 2i))`.
pub fn coeff_explicit(n: usize, l: usize) -> Result<RationalFunction> {
    check_positive(n)?;
    if l > n / 2 {
        return Err(Error::InvalidArgument(format!("turn-back count {l} exceeds {} for n = {n}", n / 2)));
    }
    let mut c = div(&int(1), &factorial(n));
    for i in 1..=l as i64 {
        c = div(&(&c * &int(-2 * i)), &shifted(2 * n as i64 - 2 - 2 * i));
    }
    Ok(c)
}

pub fn f_explicit(n: usize) -> Result<ClassTable> {
    check_positive(n)?;
    let coeffs = (0..=n / 2).map(|l| coeff_explicit(n, l)).collect::<Result<Vec<_>>>()?;
    ClassTable::new(n, coeffs)
}

/// Coefficient of the canonical `k`-element by recursion on `n`:
/// `c(n, k) = ((n-k)/2) (-2 / (n(d+2n-4))) c(n-1, k+1)`, `c(n, n) = 1/n!`.
pub fn coeff_ce_recursive(n: usize, k: usize) -> Result<RationalFunction> {
    check_positive(n)?;
    check_through(n, k)?;
    if k == n {
        return Ok(div(&int(1), &factorial(n)));
    }
    let turnbacks = ((n - k) / 2) as i64;
    let step = div(&int(-2 * turnbacks), &(&int(n as i64) * &shifted(2 * n as i64 - 4)));
    Ok(&step * &coeff_ce_recursive(n - 1, k + 1)?)
}

/// Closed forms offered for the Markov trace of `f_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceVariant {
    /// `d^{n-1} (d+2n-2) prod_{i=1..n-1} (d+i-2) / n!`
    Paper,
    /// `prod_{i=1..n-1} alpha_i * tr(f_1)` with `tr(f_1) = d`
    AlphaProduct,
}

impl TraceVariant {
    pub const ALL: [TraceVariant; 2] = [TraceVariant::Paper, TraceVariant::AlphaProduct];

    pub fn name(self) -> &'static str {
        match self {
            TraceVariant::Paper => "paper",
            TraceVariant::AlphaProduct => "alpha_product",
        }
    }
}

pub fn trace_closed_form(n: usize, variant: TraceVariant) -> Result<RationalFunction> {
    check_positive(n)?;
    Ok(match variant {
        TraceVariant::Paper => {
            let mut num = &RationalFunction::d_pow(n as u32 - 1) * &shifted(2 * n as i64 - 2);
            for i in 1..n as i64 {
                num = &num * &shifted(i - 2);
            }
            div(&num, &factorial(n))
        }
        TraceVariant::AlphaProduct => {
            (1..n).fold(RationalFunction::var(), |acc, i| &acc * &alpha(i))
        }
    })
}

/// Generator words `U_{n-1} ... U_i` (each `U_j` one of `e_j`, `v_j`) for
/// `1 <= i <= n-1`, plus the empty word; `2^n - 1` words in all.
pub fn kernel_words(n: usize) -> Vec<Vec<Generator>> {
    let mut words = vec![Vec::new()];
    for i in (1..n).rev() {
        // suffixes ending at index i
        let len = n - i;
        for mask in 0..1u32 << len {
            let word = (0..len)
                .map(|t| {
                    let j = n - 1 - t;
                    if mask >> t & 1 == 1 { Generator::V(j) } else { Generator::E(j) }
                })
                .collect();
            words.push(word);
        }
    }
    words
}

/// The diagram set `A_n` (with the generating word of each member).
pub fn kernel_support(n: usize) -> Result<Vec<(Vec<Generator>, Diagram)>> {
    kernel_words(n)
        .into_iter()
        .map(|w| {
            let c = Diagram::word(n, &w)?;
            if c.loops != 0 {
                return Err(Error::InvalidDiagram(format!("kernel word {w:?} closes a loop")));
            }
            Ok((w, c.diagram))
        })
        .collect()
}

/// `U^i = { U_{m-1} ... U_{i+1} e_i }` inside `m` strands.
pub fn u_set(m: usize, i: usize) -> Result<Vec<(Vec<Generator>, Diagram)>> {
    if i == 0 || i >= m {
        return Err(Error::GeneratorIndex { n: m, i });
    }
    let free = m - 1 - i;
    (0..1u32 << free)
        .map(|mask| {
            let mut w: Vec<Generator> = (0..free)
                .map(|t| {
                    let j = m - 1 - t;
                    if mask >> t & 1 == 1 { Generator::V(j) } else { Generator::E(j) }
                })
                .collect();
            w.push(Generator::E(i));
            let c = Diagram::word(m, &w)?;
            Ok((w, c.diagram))
        })
        .collect()
}

/// `f_n` in compressed form, whatever the construction.
pub fn projector_table(n: usize, construction: Construction) -> Result<ClassTable> {
    match construction {
        Construction::Explicit => f_explicit(n),
        Construction::Recursive => f_recursive(n)?.class_decompose(),
        Construction::Simplified => f_simplified(n)?.class_decompose(),
    }
}

/// `f_n` as a full element, whatever the construction.
pub fn projector_element(n: usize, construction: Construction) -> Result<Arc<Element>> {
    match construction {
        Construction::Explicit => Ok(Arc::new(f_explicit(n)?.expand()?)),
        Construction::Recursive => f_recursive(n),
        Construction::Simplified => f_simplified(n),
    }
}
