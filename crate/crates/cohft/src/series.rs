//! Truncated multivariate formal series over an exact coefficient ring.
//!
//! A [`SeriesRing`] fixes the variable set, per-variable exponent windows and
//! an optional total weighted-degree cap; all elements of the ring share that
//! truncation, so binary operations automatically stay inside the common
//! truncation. Coefficients are stored sparsely with sorted exponent keys, so
//! structural equality is semantic equality.
//!
//! Exponent windows may open below zero (bounded Laurent tails, used for the
//! mirror map). Products that would fall below a window panic: that is a
//! set-up error, not a truncation.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use smallvec::SmallVec;

use crate::ring::{parse_rat, rat_i, Rat, Ring, QQ};

pub type Mono = SmallVec<[i32; 6]>;

#[derive(Clone, Debug, PartialEq)]
pub struct VarSpec {
    pub name: String,
    /// Weight in the total-degree grading (0 = does not count toward cap).
    pub weight: i64,
    pub min_exp: i32,
    pub max_exp: i32,
}

impl VarSpec {
    pub fn new(name: &str, weight: i64, max_exp: i32) -> Self {
        VarSpec {
            name: name.to_string(),
            weight,
            min_exp: 0,
            max_exp,
        }
    }

    pub fn laurent(name: &str, weight: i64, min_exp: i32, max_exp: i32) -> Self {
        VarSpec {
            name: name.to_string(),
            weight,
            min_exp,
            max_exp,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesRing<R: Ring> {
    pub base: R,
    pub vars: Vec<VarSpec>,
    pub total_cap: Option<i64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesEl<T> {
    pub terms: BTreeMap<Mono, T>,
}

impl<T> SeriesEl<T> {
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SeriesError {
    #[error("incompatible series rings: {0}")]
    Incompatible(String),
    #[error("series is not invertible: {0}")]
    NotInvertible(String),
    #[error("reversion requires f(0)=0 and a unit linear coefficient")]
    BadReversion,
    #[error("not divisible by (z+w): remainder has {0} terms")]
    NotDivisible(usize),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
}

impl<R: Ring> SeriesRing<R> {
    pub fn new(base: R, vars: Vec<VarSpec>, total_cap: Option<i64>) -> Self {
        SeriesRing {
            base,
            vars,
            total_cap,
        }
    }

    /// A single-variable power-series ring truncated at `order` (exclusive).
    pub fn univariate(base: R, name: &str, order: i32) -> Self {
        SeriesRing::new(base, vec![VarSpec::new(name, 1, order - 1)], None)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn compatible(&self, other: &Self) -> bool {
        self.vars == other.vars && self.total_cap == other.total_cap
    }

    fn wdeg(&self, m: &Mono) -> i64 {
        m.iter()
            .zip(&self.vars)
            .map(|(&e, v)| e as i64 * v.weight)
            .sum()
    }

    fn admit(&self, m: &Mono) -> bool {
        for (&e, v) in m.iter().zip(&self.vars) {
            assert!(
                e >= v.min_exp,
                "Laurent window underflow in variable {} (exponent {})",
                v.name,
                e
            );
            if e > v.max_exp {
                return false;
            }
        }
        if let Some(cap) = self.total_cap {
            if self.wdeg(m) > cap {
                return false;
            }
        }
        true
    }

    fn mono_zero(&self) -> Mono {
        SmallVec::from_elem(0, self.nvars())
    }

    /// The monomial `var^exp` with unit coefficient.
    pub fn monomial(&self, var: usize, exp: i32) -> SeriesEl<R::El> {
        let mut m = self.mono_zero();
        m[var] = exp;
        let mut terms = BTreeMap::new();
        if self.admit(&m) {
            terms.insert(m, self.base.one());
        }
        SeriesEl { terms }
    }

    pub fn var(&self, name: &str) -> SeriesEl<R::El> {
        self.monomial(
            self.var_index(name)
                .unwrap_or_else(|| panic!("unknown variable {name}")),
            1,
        )
    }

    pub fn constant(&self, c: R::El) -> SeriesEl<R::El> {
        let mut terms = BTreeMap::new();
        if !self.base.is_zero(&c) {
            terms.insert(self.mono_zero(), c);
        }
        SeriesEl { terms }
    }

    pub fn coeff(&self, f: &SeriesEl<R::El>, m: &Mono) -> R::El {
        f.terms.get(m).cloned().unwrap_or_else(|| self.base.zero())
    }

    /// Coefficient of `var^exp` as a series in the remaining variables
    /// (the remaining exponents keep their slots; `var`'s slot is zeroed).
    pub fn coeff_of(&self, f: &SeriesEl<R::El>, var: usize, exp: i32) -> SeriesEl<R::El> {
        let mut terms = BTreeMap::new();
        for (m, c) in &f.terms {
            if m[var] == exp {
                let mut m2 = m.clone();
                m2[var] = 0;
                terms.insert(m2, c.clone());
            }
        }
        SeriesEl { terms }
    }

    pub fn insert_term(&self, f: &mut SeriesEl<R::El>, m: Mono, c: R::El) {
        if !self.admit(&m) || self.base.is_zero(&c) {
            return;
        }
        match f.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.base.add(e.get(), &c);
                if self.base.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, f: &SeriesEl<R::El>, c: &R::El) -> SeriesEl<R::El> {
        if self.base.is_zero(c) {
            return self.zero();
        }
        let mut terms = BTreeMap::new();
        for (m, v) in &f.terms {
            let p = self.base.mul(v, c);
            if !self.base.is_zero(&p) {
                terms.insert(m.clone(), p);
            }
        }
        SeriesEl { terms }
    }

    /// Multiply by a bare monomial (exponent shift).
    pub fn mul_monomial(&self, f: &SeriesEl<R::El>, shift: &Mono) -> SeriesEl<R::El> {
        let mut out = self.zero();
        for (m, c) in &f.terms {
            let mut m2 = m.clone();
            for (i, &s) in shift.iter().enumerate() {
                m2[i] += s;
            }
            self.insert_term(&mut out, m2, c.clone());
        }
        out
    }

    pub fn derivative(&self, f: &SeriesEl<R::El>, var: usize) -> SeriesEl<R::El> {
        let mut out = self.zero();
        for (m, c) in &f.terms {
            let e = m[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2[var] = e - 1;
            let dc = self.base.mul(c, &self.base.from_i64(e as i64));
            self.insert_term(&mut out, m2, dc);
        }
        out
    }

    /// Lowest weighted degree among stored terms.
    pub fn min_wdeg(&self, f: &SeriesEl<R::El>) -> Option<i64> {
        f.terms.keys().map(|m| self.wdeg(m)).min()
    }

    /// Map a series into another ring by sending variable `i` to `images[i]`
    /// and coefficients through `embed`.
    pub fn eval<S: Ring>(
        &self,
        f: &SeriesEl<R::El>,
        target: &S,
        images: &[S::El],
        embed: &dyn Fn(&R::El) -> S::El,
    ) -> S::El {
        assert_eq!(images.len(), self.nvars());
        let mut acc = target.zero();
        for (m, c) in &f.terms {
            let mut t = embed(c);
            for (i, &e) in m.iter().enumerate() {
                if e != 0 {
                    t = target.mul(&t, &target.pow_i64(&images[i], e as i64));
                }
            }
            target.add_assign(&mut acc, &t);
        }
        acc
    }

    /// exp(f); requires the constant term of f to vanish.
    pub fn exp(&self, f: &SeriesEl<R::El>) -> SeriesEl<R::El> {
        assert!(
            self.coeff(f, &self.mono_zero()) == self.base.zero(),
            "exp needs vanishing constant term"
        );
        let mut acc = self.one();
        let mut pw = self.one();
        let mut k = 1i64;
        loop {
            pw = self.mul(&pw, f);
            if pw.terms.is_empty() {
                break;
            }
            let term = self.scale(&pw, &self.base.from_rat(&Rat::new(1.into(), factorial(k))));
            acc = self.add(&acc, &term);
            k += 1;
            if k > 10_000 {
                panic!("exp did not terminate; series has a weight-0 direction");
            }
        }
        acc
    }

    /// log(f); requires constant term 1.
    pub fn log(&self, f: &SeriesEl<R::El>) -> SeriesEl<R::El> {
        let c0 = self.coeff(f, &self.mono_zero());
        assert!(
            c0 == self.base.one(),
            "log needs constant term 1, got {}",
            self.base.show(&c0)
        );
        let u = self.sub(f, &self.one());
        let mut acc = self.zero();
        let mut pw = self.one();
        let mut k = 1i64;
        loop {
            pw = self.mul(&pw, &u);
            if pw.terms.is_empty() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let term = self.scale(&pw, &self.base.from_rat(&Rat::new(sign.into(), k.into())));
            acc = self.add(&acc, &term);
            k += 1;
            if k > 10_000 {
                panic!("log did not terminate; series has a weight-0 direction");
            }
        }
        acc
    }

    /// Compositional inverse of a univariate series with f(0)=0, f'(0) a unit.
    pub fn reversion(&self, f: &SeriesEl<R::El>) -> Result<SeriesEl<R::El>, SeriesError> {
        if self.nvars() != 1 {
            return Err(SeriesError::BadReversion);
        }
        let order = self.vars[0].max_exp;
        let mut m1 = self.mono_zero();
        m1[0] = 1;
        let f0 = self.coeff(f, &self.mono_zero());
        let f1 = self.coeff(f, &m1);
        if !self.base.is_zero(&f0) {
            return Err(SeriesError::BadReversion);
        }
        let inv_f1 = self
            .base
            .try_inv(&f1)
            .ok_or(SeriesError::BadReversion)?;
        // g_1 = 1/f1; match coefficients of f(g(x)) = x order by order.
        let mut g = self.scale(&self.monomial(0, 1), &inv_f1);
        for n in 2..=order {
            let comp = self.compose_univariate(f, &g);
            let mut mn = self.mono_zero();
            mn[0] = n;
            let cn = self.coeff(&comp, &mn);
            if self.base.is_zero(&cn) {
                continue;
            }
            // correction: g_n -= c_n / f1
            let corr = self.base.neg(&self.base.mul(&cn, &inv_f1));
            let mut t = self.monomial(0, n);
            t = self.scale(&t, &corr);
            g = self.add(&g, &t);
        }
        Ok(g)
    }

    /// f(g(x)) for univariate f, g.
    pub fn compose_univariate(
        &self,
        f: &SeriesEl<R::El>,
        g: &SeriesEl<R::El>,
    ) -> SeriesEl<R::El> {
        assert_eq!(self.nvars(), 1);
        // Horner over descending exponents of f.
        let mut exps: Vec<i32> = f.terms.keys().map(|m| m[0]).collect();
        exps.sort_unstable();
        let mut acc = self.zero();
        let mut prev: Option<i32> = None;
        for &e in exps.iter().rev() {
            if let Some(p) = prev {
                for _ in 0..(p - e) {
                    acc = self.mul(&acc, g);
                }
            }
            let mut me = self.mono_zero();
            me[0] = e;
            acc = self.add(&acc, &self.constant(self.coeff(f, &me)));
            prev = Some(e);
        }
        if let Some(p) = prev {
            for _ in 0..p {
                acc = self.mul(&acc, g);
            }
        }
        acc
    }

    /// Quotient s/(z+w) for designated variables, erroring when s does not
    /// vanish on z = -w up to truncation.
    pub fn divide_by_sum(
        &self,
        s: &SeriesEl<R::El>,
        var_z: usize,
        var_w: usize,
    ) -> Result<SeriesEl<R::El>, SeriesError> {
        // Solve s = (z+w) t by matching z-slices from the top degree down:
        //   s_a = t_{a-1} + w * t_a   (t_A = 0 for A = top z-degree of s).
        let top = s.terms.keys().map(|m| m[var_z]).max().unwrap_or(0);
        let mut t = self.zero();
        let mut t_slice = self.zero(); // t_a, starting above the top
        for a in (1..=top).rev() {
            // t_{a-1} = s_a - w t_a
            let s_a = self.coeff_of(s, var_z, a);
            let w_t = self.mul_monomial(&t_slice, &{
                let mut sh = self.mono_zero();
                sh[var_w] = 1;
                sh
            });
            let t_prev = self.sub(&s_a, &w_t);
            // accumulate t_{a-1} * z^{a-1}
            let mut sh = self.mono_zero();
            sh[var_z] = a - 1;
            t = self.add(&t, &self.mul_monomial(&t_prev, &sh));
            t_slice = t_prev;
        }
        // remainder check: s_0 == w * t_0
        let s_0 = self.coeff_of(s, var_z, 0);
        let w_t0 = self.mul_monomial(&t_slice, &{
            let mut sh = self.mono_zero();
            sh[var_w] = 1;
            sh
        });
        let rem = self.sub(&s_0, &w_t0);
        if !rem.terms.is_empty() {
            return Err(SeriesError::NotDivisible(rem.terms.len()));
        }
        Ok(t)
    }

    pub fn show(&self, f: &SeriesEl<R::El>) -> String {
        if f.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in &f.terms {
            let mut s = format!("({})", self.base.show(c));
            for (i, &e) in m.iter().enumerate() {
                if e != 0 {
                    s.push_str(&format!("*{}^{}", self.vars[i].name, e));
                }
            }
            parts.push(s);
        }
        parts.join(" + ")
    }
}

impl SeriesRing<QQ> {
    /// JSON document: variables, truncation, and `[exponents, "p/q"]` pairs.
    pub fn to_json(&self, f: &SeriesEl<Rat>) -> Value {
        let vars: Vec<Value> = self
            .vars
            .iter()
            .map(|v| {
                json!({
                    "name": v.name,
                    "weight": v.weight,
                    "min_exp": v.min_exp,
                    "max_exp": v.max_exp,
                })
            })
            .collect();
        let coeffs: Vec<Value> = f
            .terms
            .iter()
            .map(|(m, c)| json!([m.iter().collect::<Vec<_>>(), crate::ring::show_rat(c)]))
            .collect();
        json!({
            "variables": vars,
            "total_cap": self.total_cap,
            "coefficients": coeffs,
        })
    }

    pub fn from_json(v: &Value) -> Option<(Self, SeriesEl<Rat>)> {
        let vars = v["variables"]
            .as_array()?
            .iter()
            .map(|w| {
                Some(VarSpec {
                    name: w["name"].as_str()?.to_string(),
                    weight: w["weight"].as_i64()?,
                    min_exp: w["min_exp"].as_i64()? as i32,
                    max_exp: w["max_exp"].as_i64()? as i32,
                })
            })
            .collect::<Option<Vec<_>>>()?;
        let cap = v["total_cap"].as_i64();
        let ring = SeriesRing::new(QQ, vars, cap);
        let mut f = ring.zero();
        for pair in v["coefficients"].as_array()? {
            let exps: Mono = pair[0]
                .as_array()?
                .iter()
                .map(|e| e.as_i64().unwrap() as i32)
                .collect();
            let c = parse_rat(pair[1].as_str()?)?;
            ring.insert_term(&mut f, exps, c);
        }
        Some((ring, f))
    }
}

impl<R: Ring> Ring for SeriesRing<R> {
    type El = SeriesEl<R::El>;

    fn zero(&self) -> Self::El {
        SeriesEl {
            terms: BTreeMap::new(),
        }
    }

    fn one(&self) -> Self::El {
        self.constant(self.base.one())
    }

    fn is_zero(&self, a: &Self::El) -> bool {
        a.terms.is_empty()
    }

    fn neg(&self, a: &Self::El) -> Self::El {
        let terms = a
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), self.base.neg(c)))
            .collect();
        SeriesEl { terms }
    }

    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El {
        let mut out = a.clone();
        for (m, c) in &b.terms {
            self.insert_term(&mut out, m.clone(), c.clone());
        }
        out
    }

    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El {
        let (small, big) = if a.terms.len() <= b.terms.len() {
            (a, b)
        } else {
            (b, a)
        };
        let mut out = self.zero();
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let mut m: Mono = ma.clone();
                for (i, &e) in mb.iter().enumerate() {
                    m[i] += e;
                }
                // cheap pre-check before the coefficient product
                if !self.admit_checked(&m) {
                    continue;
                }
                let c = self.base.mul(ca, cb);
                self.insert_term(&mut out, m, c);
            }
        }
        out
    }

    fn try_inv(&self, a: &Self::El) -> Option<Self::El> {
        // The lowest weighted-degree part must be a single monomial with a
        // unit coefficient; then 1/a = c^-1 m^-1 sum (-n)^k.
        let d0 = self.min_wdeg(a)?;
        let lead: Vec<(&Mono, &R::El)> = a
            .terms
            .iter()
            .filter(|(m, _)| self.wdeg(m) == d0)
            .collect();
        if lead.len() != 1 {
            return None;
        }
        let (m0, c0) = (lead[0].0.clone(), lead[0].1.clone());
        let c0_inv = self.base.try_inv(&c0)?;
        let m0_inv: Mono = m0.iter().map(|&e| -e).collect();
        for (i, &e) in m0_inv.iter().enumerate() {
            if e < self.vars[i].min_exp {
                return None;
            }
        }
        // n = a * m0^-1 * c0^-1 - 1 has strictly positive weighted degree
        let shifted = self.scale(&self.mul_monomial(a, &m0_inv), &c0_inv);
        let n = self.sub(&shifted, &self.one());
        if !n.terms.is_empty() && self.min_wdeg(&n)? <= 0 {
            return None;
        }
        let mut geom = self.one();
        let mut pw = self.one();
        loop {
            pw = self.mul(&pw, &n);
            if pw.terms.is_empty() {
                break;
            }
            let neg = self.neg(&pw);
            geom = self.add(&geom, &neg);
            pw = neg;
            // pw now holds (-n)^k
        }
        Some(self.scale(&self.mul_monomial(&geom, &m0_inv), &c0_inv))
    }

    fn from_i64(&self, n: i64) -> Self::El {
        self.constant(self.base.from_i64(n))
    }

    fn from_rat(&self, r: &Rat) -> Self::El {
        self.constant(self.base.from_rat(r))
    }

    fn show(&self, a: &Self::El) -> String {
        SeriesRing::show(self, a)
    }
}

impl<R: Ring> SeriesRing<R> {
    fn admit_checked(&self, m: &Mono) -> bool {
        // like admit() but also the panic on underflow
        self.admit(m)
    }
}

fn factorial(k: i64) -> num::BigInt {
    let mut f = num::BigInt::from(1);
    for i in 2..=k {
        f *= i;
    }
    f
}

/// Public entry matching the operation table: add or multiply two series
/// from possibly different rings, requiring compatible truncations.
pub fn series_arith<R: Ring + PartialEq>(
    ra: &SeriesRing<R>,
    a: &SeriesEl<R::El>,
    rb: &SeriesRing<R>,
    b: &SeriesEl<R::El>,
    op: ArithOp,
) -> Result<SeriesEl<R::El>, SeriesError> {
    if !ra.compatible(rb) || ra.base != rb.base {
        return Err(SeriesError::Incompatible(format!(
            "{:?} vs {:?}",
            ra.vars.iter().map(|v| &v.name).collect::<Vec<_>>(),
            rb.vars.iter().map(|v| &v.name).collect::<Vec<_>>()
        )));
    }
    Ok(match op {
        ArithOp::Add => ra.add(a, b),
        ArithOp::Mul => ra.mul(a, b),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn qring(order: i32) -> SeriesRing<QQ> {
        SeriesRing::univariate(QQ, "q", order)
    }

    #[test]
    fn difference_of_squares() {
        let r = qring(6);
        let one = r.one();
        let q = r.var("q");
        let a = r.add(&one, &q);
        let b = r.sub(&one, &q);
        let p = r.mul(&a, &b);
        let expect = r.sub(&one, &r.mul(&q, &q));
        assert_eq!(p, expect);
    }

    #[test]
    fn exp_log_inverse_pair() {
        let r = qring(11);
        let f = r.add(&r.one(), &r.var("q"));
        let g = r.exp(&r.log(&f));
        assert_eq!(g, f);
    }

    #[test]
    fn exp_square_q3_coefficient() {
        // (sum q^n/n!)^2, coefficient of q^3, against a direct convolution.
        let r = qring(11);
        let e = r.exp(&r.var("q"));
        let e2 = r.mul(&e, &e);
        let mut m = Mono::from_slice(&[3]);
        let got = r.coeff(&e2, &m);
        // oracle: sum_{i+j=3} 1/i! 1/j!
        let mut expect = Rat::from_integer(0.into());
        for i in 0..=3i64 {
            let j = 3 - i;
            expect += Rat::new(1.into(), factorial(i)) * Rat::new(1.into(), factorial(j));
        }
        assert_eq!(got, expect);
        assert_eq!(got, rat(4, 3));
        m[0] = 0;
        let _ = m;
    }

    #[test]
    fn reversion_identity_and_catalan() {
        let r = qring(9);
        let x = r.var("q");
        assert_eq!(r.reversion(&x).unwrap(), x);

        // f = x + x^2; g has signed Catalan coefficients 1,-1,2,-5,14,...
        let f = r.add(&x, &r.mul(&x, &x));
        let g = r.reversion(&f).unwrap();
        // Lagrange inversion oracle: g_n = (1/n) [w^{n-1}] (1+w)^{-n}
        for n in 1..=8i64 {
            let mut mn = Mono::from_slice(&[n as i32]);
            let got = r.coeff(&g, &mn);
            let mut binom = Rat::from_integer(1.into()); // C(-n, k) expansion
            let k = n - 1;
            // [w^k] (1+w)^{-n} = (-1)^k C(n+k-1, k)
            let mut c = Rat::from_integer(1.into());
            for i in 0..k {
                c *= Rat::new((n + i).into(), (i + 1).into());
            }
            if k % 2 == 1 {
                c = -c;
            }
            binom = c / Rat::from_integer(n.into());
            assert_eq!(got, binom, "coefficient {n}");
            mn[0] = 0;
        }
        // two-sided compositional inverse to truncation
        let fg = r.compose_univariate(&f, &g);
        assert_eq!(fg, x);
        let gf = r.compose_univariate(&g, &f);
        assert_eq!(gf, x);
    }

    #[test]
    fn divide_by_z_plus_w_cases() {
        let r = SeriesRing::new(
            QQ,
            vec![VarSpec::new("z", 1, 8), VarSpec::new("w", 1, 8)],
            Some(8),
        );
        let z = r.var("z");
        let w = r.var("w");
        // z^2 - w^2 -> z - w
        let s = r.sub(&r.mul(&z, &z), &r.mul(&w, &w));
        let t = r.divide_by_sum(&s, 0, 1).unwrap();
        assert_eq!(t, r.sub(&z, &w));
        // round trip: t * (z+w) = s
        let back = r.mul(&t, &r.add(&z, &w));
        assert_eq!(back, s);

        // e^{a(z+w)} - 1 with a = 3: quotient = sum a^m (z+w)^{m-1} / m!
        let a = rat_i(3);
        let zw = r.add(&z, &w);
        let e = r.exp(&r.scale(&zw, &a));
        let s2 = r.sub(&e, &r.one());
        let t2 = r.divide_by_sum(&s2, 0, 1).unwrap();
        let mut expect = r.zero();
        let mut pw = r.one();
        for m in 1..=9i64 {
            let coeff = Rat::new(
                num::BigInt::from(3).pow(m as u32),
                factorial(m),
            );
            expect = r.add(&expect, &r.scale(&pw, &coeff));
            pw = r.mul(&pw, &zw);
        }
        assert_eq!(t2, expect);

        // z + 2w is not divisible
        let bad = r.add(&z, &r.scale(&w, &rat_i(2)));
        assert!(r.divide_by_sum(&bad, 0, 1).is_err());
    }

    #[test]
    fn inverse_with_leading_monomial() {
        let r = SeriesRing::new(
            QQ,
            vec![VarSpec::laurent("q", 1, -6, 6)],
            None,
        );
        let q = r.var("q");
        // f = q(1 + q): 1/f = q^{-1}(1 - q + q^2 - ...)
        let f = r.mul(&q, &r.add(&r.one(), &q));
        let inv = r.try_inv(&f).unwrap();
        let prod = r.mul(&f, &inv);
        assert_eq!(prod, r.one());
    }

    #[test]
    fn arith_rejects_incompatible() {
        let r1 = qring(5);
        let r2 = qring(7);
        let a = r1.one();
        let b = r2.one();
        assert!(series_arith(&r1, &a, &r2, &b, ArithOp::Add).is_err());
    }
}
