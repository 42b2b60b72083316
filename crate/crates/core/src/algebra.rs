//! Linear combinations of diagrams: the algebra over ℚ(d) and its numeric
//! specializations over ℚ.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;

use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::diagram::{check_through, Diagram};
use crate::error::{Error, Result};
use crate::field::{BigRational, RationalFunction};

/// Coefficient ring of a [`LinComb`].
pub trait Scalar: Clone + Eq + Hash + Zero + One + fmt::Debug + fmt::Display {
    fn add_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_count(c: u64) -> Self;
}

impl Scalar for RationalFunction {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_count(c: u64) -> Self {
        RationalFunction::from_rational(BigRational::from_integer(c.into()))
    }
}

impl Scalar for BigRational {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_count(c: u64) -> Self {
        BigRational::from_integer(c.into())
    }
}

/// Finite linear combination of diagrams on a common strand count.
///
/// Terms are kept in the pinned diagram order and zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct LinComb<C> {
    n: usize,
    terms: BTreeMap<Diagram, C>,
}

/// Element of the algebra over ℚ(d).
pub type Element = LinComb<RationalFunction>;

/// Element specialized at a rational value of `d`.
pub type NumericElement = LinComb<BigRational>;

impl<C: Scalar> LinComb<C> {
    pub fn zero(n: usize) -> Self {
        LinComb { n, terms: BTreeMap::new() }
    }

    pub fn from_diagram(d: Diagram) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(d, C::one());
        LinComb { n: d.n(), terms }
    }

    pub fn identity(n: usize) -> Result<Self> {
        Ok(Self::from_diagram(Diagram::identity(n)?))
    }

    /// Builds a combination, summing repeated diagrams and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Diagram, C)>>(n: usize, terms: I) -> Result<Self> {
        let mut out = Self::zero(n);
        for (d, c) in terms {
            if d.n() != n {
                return Err(Error::StrandMismatch { left: n, right: d.n() });
            }
            out.add_term(d, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, d: Diagram, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&d) {
            Some(cur) => {
                let sum = cur.add_ref(&c);
                if sum.is_zero() {
                    self.terms.remove(&d);
                } else {
                    *cur = sum;
                }
            }
            None => {
                self.terms.insert(d, c);
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, d: &Diagram) -> Option<&C> {
        self.terms.get(d)
    }

    pub fn support(&self) -> impl Iterator<Item = &Diagram> {
        self.terms.keys()
    }

    fn check_same_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::StrandMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    /// `s * self + t * other`.
    pub fn combine(&self, other: &Self, s: &C, t: &C) -> Result<Self> {
        self.check_same_n(other)?;
        let mut out = self.scale(s);
        if !t.is_zero() {
            for (d, c) in &other.terms {
                out.add_term(*d, c.mul_ref(t));
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, &C::one(), &C::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, &C::one(), &C::one().neg_ref())
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero(self.n);
        }
        if s.is_one() {
            return self.clone();
        }
        let terms = self.terms.iter().map(|(d, c)| (*d, c.mul_ref(s))).collect();
        LinComb { n: self.n, terms }
    }

    /// Product with `self` stacked above `other`; every removed closed loop
    /// contributes a factor `loop_value`.
    pub fn mul_with(&self, other: &Self, loop_value: &C) -> Result<Self> {
        self.check_same_n(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.n));
        }
        let (ia, va) = intern(&self.terms);
        let (ib, vb) = intern(&other.terms);

        // counts of (diagram, coefficient of a, coefficient of b, loops)
        let mut counts: FxHashMap<(Diagram, u32, u32, u32), u64> = FxHashMap::default();
        for &(da, ka) in &ia {
            for &(db, kb) in &ib {
                let c = da.compose_unchecked(&db);
                *counts.entry((c.diagram, ka, kb, c.loops)).or_insert(0) += 1;
            }
        }

        let mut grouped: BTreeMap<Diagram, Vec<(u32, u32, u32, u64)>> = BTreeMap::new();
        for ((d, ka, kb, loops), cnt) in counts {
            grouped.entry(d).or_default().push((ka, kb, loops, cnt));
        }

        let mut powers: Vec<C> = vec![C::one()];
        let mut pair_products: FxHashMap<(u32, u32), C> = FxHashMap::default();
        let mut memo: FxHashMap<Vec<(u32, u32, u32, u64)>, C> = FxHashMap::default();
        let mut out = Self::zero(self.n);
        for (d, mut key) in grouped {
            key.sort_unstable();
            let coeff = match memo.get(&key) {
                Some(c) => c.clone(),
                None => {
                    let mut sum = C::zero();
                    for &(ka, kb, loops, cnt) in &key {
                        while powers.len() <= loops as usize {
                            let next = powers.last().expect("nonempty").mul_ref(loop_value);
                            powers.push(next);
                        }
                        let ab = pair_products
                            .entry((ka, kb))
                            .or_insert_with(|| va[ka as usize].mul_ref(&vb[kb as usize]));
                        let mut term = ab.mul_ref(&powers[loops as usize]);
                        if cnt != 1 {
                            term = term.mul_ref(&C::from_count(cnt));
                        }
                        sum = sum.add_ref(&term);
                    }
                    memo.insert(key, sum.clone());
                    sum
                }
            };
            if !coeff.is_zero() {
                out.terms.insert(d, coeff);
            }
        }
        Ok(out)
    }

    /// Adds vertical strands on the right up to `m` strands.
    pub fn embed(&self, m: usize) -> Result<Self> {
        if m == self.n {
            return Ok(self.clone());
        }
        let mut terms = BTreeMap::new();
        for (d, c) in &self.terms {
            terms.insert(d.embed(m)?, c.clone());
        }
        Ok(LinComb { n: m, terms })
    }

    /// Sum of `coeff * loop_value^closure_loops` over the terms.
    pub fn trace_with(&self, loop_value: &C) -> C {
        let mut powers: Vec<C> = vec![C::one()];
        let mut acc = C::zero();
        for (d, c) in &self.terms {
            let k = d.closure_loops();
            while powers.len() <= k {
                let next = powers.last().expect("nonempty").mul_ref(loop_value);
                powers.push(next);
            }
            acc = acc.add_ref(&c.mul_ref(&powers[k]));
        }
        acc
    }

    /// One line per term, `coeff<TAB>diagram`, grouped by through-strand
    /// count (largest first) and in the pinned order within a group.
    pub fn to_text(&self) -> String {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(d, _)| std::cmp::Reverse(d.through_strands()));
        let mut s = String::new();
        for (d, c) in terms {
            s.push_str(&format!("{c}\t{d}\n"));
        }
        s
    }
}

fn intern<C: Scalar>(terms: &BTreeMap<Diagram, C>) -> (Vec<(Diagram, u32)>, Vec<C>) {
    let mut index: FxHashMap<&C, u32> = FxHashMap::default();
    let mut values: Vec<C> = Vec::new();
    let keyed = terms
        .iter()
        .map(|(d, c)| {
            let k = *index.entry(c).or_insert_with(|| {
                values.push(c.clone());
                (values.len() - 1) as u32
            });
            (*d, k)
        })
        .collect();
    (keyed, values)
}

impl Element {
    pub fn generator(n: usize, g: crate::diagram::Generator) -> Result<Self> {
        Ok(Self::from_diagram(Diagram::generator(n, g)?))
    }

    /// Product over ℚ(d).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_with(other, &RationalFunction::var())
    }

    pub fn markov_trace(&self) -> RationalFunction {
        self.trace_with(&RationalFunction::var())
    }

    /// Specializes every coefficient at `d = v`.
    pub fn eval(&self, v: &BigRational) -> Result<NumericElement> {
        let mut out = NumericElement::zero(self.n);
        for (d, c) in &self.terms {
            let x = c.eval(v).map_err(|source| Error::TermPole { diagram: *d, source })?;
            out.add_term(*d, x);
        }
        Ok(out)
    }

    /// Compresses a class-uniform element into its per-class coefficients.
    pub fn class_decompose(&self) -> Result<ClassTable> {
        let n = self.n;
        let mut coeffs = Vec::new();
        for l in 0..=n / 2 {
            let k = n - 2 * l;
            let present: Vec<(&Diagram, &RationalFunction)> =
                self.terms.iter().filter(|(d, _)| d.through_strands() == k).collect();
            let size = crate::diagram::class_size(n, l);
            if present.is_empty() {
                coeffs.push(RationalFunction::zero());
                continue;
            }
            let (first, c0) = present[0];
            if let Some((d, _)) = present.iter().find(|(_, c)| *c != c0) {
                return Err(Error::NotClassUniform { first: *first, second: **d });
            }
            if (present.len() as u128) < size {
                let missing = Diagram::enumerate(n, Some(k))?
                    .into_iter()
                    .find(|d| !self.terms.contains_key(d))
                    .expect("class has a missing member");
                return Err(Error::NotClassUniform { first: *first, second: missing });
            }
            coeffs.push(c0.clone());
        }
        Ok(ClassTable { n, coeffs })
    }
}

impl NumericElement {
    pub fn mul_at(&self, other: &Self, d: &BigRational) -> Result<Self> {
        self.mul_with(other, d)
    }
}

impl<C: Scalar> fmt::Debug for LinComb<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(d, c)| (d.to_text(), c))).finish()
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr<C> {
    partner: Vec<usize>,
    coeff: C,
}

#[derive(Serialize, Deserialize)]
struct LinCombRepr<C> {
    n: usize,
    terms: Vec<TermRepr<C>>,
}

impl<C: Scalar + Serialize> Serialize for LinComb<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LinCombRepr {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(d, c)| TermRepr { partner: d.partners(), coeff: c.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, C: Scalar + Deserialize<'de>> Deserialize<'de> for LinComb<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = LinCombRepr::<C>::deserialize(d)?;
        let mut out = LinComb::zero(repr.n);
        for t in repr.terms {
            let diag = Diagram::from_partner(repr.n, &t.partner).map_err(D::Error::custom)?;
            if out.terms.contains_key(&diag) {
                return Err(D::Error::custom(format!("duplicate term {diag}")));
            }
            out.add_term(diag, t.coeff);
        }
        Ok(out)
    }
}

/// Per-class coefficients of a class-uniform element: entry `l` multiplies
/// the sum of all diagrams with `n - 2l` through strands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassTable {
    n: usize,
    coeffs: Vec<RationalFunction>,
}

impl ClassTable {
    /// `coeffs[l]` for `l = 0..=n/2`.
    pub fn new(n: usize, coeffs: Vec<RationalFunction>) -> Result<Self> {
        if n == 0 || coeffs.len() != n / 2 + 1 {
            return Err(Error::InvalidArgument(format!(
                "class table for n = {n} needs {} coefficients, got {}",
                n / 2 + 1,
                coeffs.len()
            )));
        }
        Ok(ClassTable { n, coeffs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, l: usize) -> &RationalFunction {
        &self.coeffs[l]
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    /// Coefficient of the class with `k` through strands.
    pub fn coeff_for_through(&self, k: usize) -> Result<&RationalFunction> {
        check_through(self.n, k)?;
        Ok(&self.coeffs[(self.n - k) / 2])
    }

    /// Full element; `(2n-1)!!` terms when every class coefficient is nonzero.
    pub fn expand(&self) -> Result<Element> {
        let mut terms = BTreeMap::new();
        for d in Diagram::enumerate(self.n, None)? {
            let c = &self.coeffs[(self.n - d.through_strands()) / 2];
            if !c.is_zero() {
                terms.insert(d, c.clone());
            }
        }
        Ok(LinComb { n: self.n, terms })
    }

    /// Streams the expanded terms in the pinned order without materializing
    /// the element.
    pub fn for_each_term(&self, mut f: impl FnMut(&Diagram, &RationalFunction)) -> Result<()> {
        Diagram::for_each(self.n, None, |d| {
            let c = &self.coeffs[(self.n - d.through_strands()) / 2];
            if !c.is_zero() {
                f(d, c);
            }
        })
    }

    /// `name = (c0)[n]_n - (c1)[n-2]_n + ...`, zero classes omitted.
    pub fn render(&self, name: &str) -> String {
        let mut out = format!("{name} =");
        let mut first = true;
        for (l, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.n - 2 * l;
            let class = if self.n == 1 { "1_1".to_string() } else { format!("[{k}]_{}", self.n) };
            let text = factorial_form(c, self.n).unwrap_or_else(|| c.pretty());
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            let sign = match (first, neg) {
                (true, false) => " ",
                (true, true) => " -",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            if body == "1" {
                out.push_str(&format!("{sign}{class}"));
            } else {
                out.push_str(&format!("{sign}({body}){class}"));
            }
            first = false;
        }
        if first {
            out.push_str(" 0");
        }
        out
    }
}

/// Writes `c` as `±m/(n!D)` when `c n!` has constant numerator `m` in {1, 2},
/// the way projector tables are usually printed.
fn factorial_form(c: &RationalFunction, n: usize) -> Option<String> {
    if n < 3 {
        return None;
    }
    let fact: BigRational = (1..=n).map(|i| BigRational::from_integer(i.into())).product();
    let g = c * &RationalFunction::from_rational(fact);
    let m = RationalFunction::from_poly(g.num().clone()).as_constant()?;
    let abs = m.abs();
    if !abs.is_integer() || abs > BigRational::from_integer(2.into()) {
        return None;
    }
    let sign = if m.is_negative() { "-" } else { "" };
    if g.den().is_one() {
        return Some(format!("{sign}{abs}/{n}!"));
    }
    let den = RationalFunction::from_poly(g.den().clone()).inv().ok()?.pretty();
    let factors = den.strip_prefix("1/")?;
    let factors = match factors.strip_prefix("((") {
        Some(rest) => format!("({}", rest.strip_suffix(')')?),
        None => factors.to_string(),
    };
    Some(format!("{sign}{abs}/({n}!{factors})"))
}

#[derive(Serialize, Deserialize)]
struct ClassEntryRepr {
    l: usize,
    coeff: RationalFunction,
}

#[derive(Serialize, Deserialize)]
struct ClassTableRepr {
    n: usize,
    coeffs: Vec<ClassEntryRepr>,
}

impl Serialize for ClassTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ClassTableRepr {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(l, c)| ClassEntryRepr { l, coeff: c.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ClassTable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ClassTableRepr::deserialize(d)?;
        let mut coeffs = vec![None; repr.n / 2 + 1];
        for e in repr.coeffs {
            let slot = coeffs
                .get_mut(e.l)
                .ok_or_else(|| D::Error::custom(format!("class index {} out of range", e.l)))?;
            if slot.replace(e.coeff).is_some() {
                return Err(D::Error::custom(format!("class index {} repeated", e.l)));
            }
        }
        let coeffs = coeffs
            .into_iter()
            .enumerate()
            .map(|(l, c)| c.ok_or_else(|| D::Error::custom(format!("class index {l} missing"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        ClassTable::new(repr.n, coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Generator::{self, E, V};

    fn gen(n: usize, g: Generator) -> Element {
        Element::generator(n, g).unwrap()
    }

    fn rf(p: i64, q: i64) -> RationalFunction {
        RationalFunction::ratio(p, q)
    }

    fn inv_d() -> RationalFunction {
        RationalFunction::var().inv().unwrap()
    }

    fn f2() -> Element {
        let one = Element::identity(2).unwrap();
        let partial = one.combine(&gen(2, E(1)), &rf(1, 2), &-inv_d()).unwrap();
        partial.combine(&gen(2, V(1)), &RationalFunction::one(), &rf(1, 2)).unwrap()
    }

    #[test]
    fn combine_examples() {
        let f = f2();
        assert_eq!(f.len(), 3);
        assert_eq!(f.coeff(&Diagram::e(2, 1).unwrap()), Some(&-inv_d()));
        let a = gen(3, V(2));
        assert!(a.combine(&a, &RationalFunction::one(), &rf(-1, 1)).unwrap().is_zero());
        let s = rf(3, 7);
        let z = Element::zero(3);
        assert_eq!(a.combine(&z, &s, &rf(5, 1)).unwrap(), a.scale(&s));
        assert!(a.combine(&Element::zero(2), &s, &s).is_err());
    }

    #[test]
    fn products() {
        let e1 = gen(2, E(1));
        assert_eq!(e1.mul(&e1).unwrap(), e1.scale(&RationalFunction::var()));
        let f = f2();
        assert_eq!(f.mul(&f).unwrap(), f);
        assert!(f.mul(&e1).unwrap().is_zero());
        assert!(e1.mul(&f).unwrap().is_zero());
        assert!(f.mul(&gen(3, E(1))).is_err());
    }

    #[test]
    fn traces() {
        assert_eq!(Element::identity(2).unwrap().markov_trace(), RationalFunction::d_pow(2));
        assert_eq!(gen(2, E(1)).markov_trace(), RationalFunction::var());
        // 1/2 d^2 - (1/d) d + 1/2 d
        let expect = RationalFunction::new(
            crate::field::Polynomial::from_ints([-2, 1, 1]),
            crate::field::Polynomial::from_ints([2]),
        )
        .unwrap();
        assert_eq!(f2().markov_trace(), expect);
    }

    #[test]
    fn class_decomposition() {
        let t = f2().class_decompose().unwrap();
        assert_eq!(t.coeffs(), &[rf(1, 2), -inv_d()]);
        assert_eq!(t.expand().unwrap(), f2());

        let err = Element::identity(2).unwrap().class_decompose().unwrap_err();
        assert!(matches!(err, Error::NotClassUniform { .. }));
        assert_eq!(Element::identity(1).unwrap().class_decompose().unwrap().coeffs(), &[rf(1, 1)]);
    }

    #[test]
    fn nonuniform_witness_pairs_two_diagrams_of_one_class() {
        let x = gen(3, V(1)).add(&gen(3, V(2)).scale(&rf(2, 1))).unwrap();
        match x.class_decompose().unwrap_err() {
            Error::NotClassUniform { first, second } => {
                assert_eq!(first.through_strands(), second.through_strands());
                assert_ne!(x.coeff(&first), x.coeff(&second));
            }
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn expand_examples() {
        let zero = ClassTable::new(3, vec![RationalFunction::zero(); 2]).unwrap();
        assert!(zero.expand().unwrap().is_zero());
        let d_plus_2 = RationalFunction::from_poly(crate::field::Polynomial::linear(2));
        let c1 = rf(-2, 6).checked_div(&d_plus_2).unwrap();
        let f3 = ClassTable::new(3, vec![rf(1, 6), c1]).unwrap().expand().unwrap();
        assert_eq!(f3.len(), 15);
    }

    #[test]
    fn evaluation() {
        let v = BigRational::from_integer(3.into());
        let ev = f2().eval(&v).unwrap();
        let q = |p: i64, r: i64| BigRational::new(p.into(), r.into());
        assert_eq!(ev.coeff(&Diagram::identity(2).unwrap()), Some(&q(1, 2)));
        assert_eq!(ev.coeff(&Diagram::e(2, 1).unwrap()), Some(&q(-1, 3)));
        assert_eq!(ev.coeff(&Diagram::v(2, 1).unwrap()), Some(&q(1, 2)));
        let err = f2().eval(&BigRational::zero()).unwrap_err();
        assert!(matches!(err, Error::TermPole { .. }));
    }

    #[test]
    fn json_round_trip() {
        let s = serde_json::to_string(&f2()).unwrap();
        let back: Element = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f2());
        let t = f2().class_decompose().unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.starts_with(r#"{"n":2,"coeffs":[{"l":0,"coeff":{"num":["1"],"den":["2"]}}"#));
        assert_eq!(serde_json::from_str::<ClassTable>(&s).unwrap(), t);
    }

    #[test]
    fn render_table() {
        let t = f2().class_decompose().unwrap();
        assert_eq!(t.render("f_2"), "f_2 = (1/2)[2]_2 - (1/d)[0]_2");
    }
}
