use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::ring::{format_rational, parse_rational, Q};
use super::{AlgError, Ring};

/// Exponent vector with trailing zeros trimmed; ordered graded-lex.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(Vec<u32>);

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Mono(exps)
    }

    /// `t_var^e`, 1-based variable.
    pub fn var(var: usize, e: u32) -> Self {
        let mut v = vec![0; var];
        v[var - 1] = e;
        Mono::new(v)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.0.get(var - 1).copied().unwrap_or(0)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn var_count(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let n = self.0.len().max(other.0.len());
        let v = (0..n)
            .map(|i| self.0.get(i).copied().unwrap_or(0) + other.0.get(i).copied().unwrap_or(0))
            .collect();
        Mono::new(v)
    }

    /// All monomials in `nvars` variables of total degree at most `d`,
    /// ascending graded-lex.
    pub fn all_up_to(nvars: usize, d: u32) -> Vec<Mono> {
        let mut out = Vec::new();
        for deg in 0..=d {
            let mut cur = vec![0u32; nvars];
            compositions(deg, 0, &mut cur, &mut out);
        }
        out.sort();
        out
    }
}

fn compositions(left: u32, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<Mono>) {
    if pos == cur.len() {
        if left == 0 {
            out.push(Mono::new(cur.clone()));
        }
        return;
    }
    for e in 0..=left {
        cur[pos] = e;
        compositions(left - e, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for i in 0..n {
                let a = self.0.get(i).copied().unwrap_or(0);
                let b = other.0.get(i).copied().unwrap_or(0);
                match a.cmp(&b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `t1, t2, ...` over the rationals.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, Q>,
}

impl Poly {
    pub fn constant(c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(), c);
        }
        Poly { terms }
    }

    /// The variable `t_var` (1-based).
    pub fn var(var: usize) -> Self {
        Poly::monomial(Mono::var(var, 1), Q::one())
    }

    pub fn monomial(m: Mono, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, Q)>) -> Self {
        let mut p = Poly::default();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    fn add_term(&mut self, m: Mono, c: &Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&Mono::one())
    }

    /// Substitutes `value` for `t_var` and renumbers the later variables down.
    pub fn evaluate(&self, var: usize, value: &Q) -> Poly {
        let mut out = Poly::default();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            let mut v = m.0.clone();
            if var <= v.len() {
                v.remove(var - 1);
            }
            let mut coef = c.clone();
            for _ in 0..e {
                coef *= value;
            }
            out.add_term(Mono::new(v), &coef);
        }
        out
    }

    /// Value at a full point (missing coordinates read as zero).
    pub fn eval_point(&self, point: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                let x = point.get(i).cloned().unwrap_or_else(Q::zero);
                for _ in 0..e {
                    t *= &x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Inserts `count` fresh variables before position `at` (1-based).
    pub fn insert_vars(&self, at: usize, count: usize) -> Poly {
        let mut out = Poly::default();
        for (m, c) in &self.terms {
            let mut v = m.0.clone();
            if v.len() >= at {
                for _ in 0..count {
                    v.insert(at - 1, 0);
                }
            }
            out.add_term(Mono::new(v), c);
        }
        out
    }

    /// True iff `t_var` does not occur.
    pub fn independent_of(&self, var: usize) -> bool {
        self.terms.keys().all(|m| m.exp(var) == 0)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Q::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("t{}", i + 1) } else { format!("t{}^{}", i + 1, e) })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", format_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&a), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

fn parse_poly(s: &str) -> Result<Poly, AlgError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(AlgError::Parse("empty polynomial".into()));
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && !(cur.is_empty() && i == 0) && !cur.ends_with('^') {
            if cur.is_empty() {
                return Err(AlgError::Parse(format!("bad polynomial {s:?}")));
            }
            terms.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if ch == '-' && i == 0 {
            neg = true;
        } else if ch != '+' {
            cur.push(ch);
        }
    }
    terms.push((neg, cur));
    let mut out = Poly::default();
    for (neg, body) in terms {
        let mut coef = Q::one();
        let mut mono = Mono::one();
        for factor in body.split('*') {
            if let Some(rest) = factor.strip_prefix('t') {
                let (var, e) = match rest.split_once('^') {
                    Some((v, e)) => (v, e),
                    None => (rest, "1"),
                };
                let var: usize = var.parse().map_err(|_| AlgError::Parse(format!("bad variable in {s:?}")))?;
                let e: u32 = e.parse().map_err(|_| AlgError::Parse(format!("bad exponent in {s:?}")))?;
                if var == 0 {
                    return Err(AlgError::Parse(format!("variables start at t1: {s:?}")));
                }
                mono = mono.mul(&Mono::var(var, e));
            } else {
                coef *= parse_rational(factor)?;
            }
        }
        if neg {
            coef = -coef;
        }
        out.add_term(mono, &coef);
    }
    Ok(out)
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(Q::one())
    }
}

impl std::ops::Add for Poly {
    type Output = Poly;
    fn add(self, other: Poly) -> Poly {
        self.plus(&other)
    }
}

impl std::ops::Mul for Poly {
    type Output = Poly;
    fn mul(self, other: Poly) -> Poly {
        self.times(&other)
    }
}

impl Ring for Poly {
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
    fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c.clone());
        }
        out
    }
    fn times(&self, other: &Self) -> Self {
        let mut out = Poly::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
    fn negate(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
    fn from_q(c: &Q) -> Self {
        Poly::constant(c.clone())
    }
    fn parse_str(s: &str) -> Result<Self, AlgError> {
        parse_poly(s)
    }
    fn var_count(&self) -> usize {
        self.terms.keys().map(Mono::var_count).max().unwrap_or(0)
    }
    fn accumulate(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ring::{q, qf};

    #[test]
    fn formatting_round_trip() {
        let t1 = Poly::var(1);
        let t2 = Poly::var(2);
        let p = Poly::constant(qf(3, 2)).times(&t1).times(&t1).times(&t2).minus(&Poly::one());
        assert_eq!(p.to_string(), "3/2*t1^2*t2 - 1");
        assert_eq!(Poly::parse_str("3/2*t1^2*t2 - 1").unwrap(), p);
        for s in ["0", "t1", "-t1 + 1", "t2^3 - 1/2*t1 + 7", "-5/3"] {
            assert_eq!(Poly::parse_str(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn evaluation() {
        let t = Poly::var(1);
        let p = Poly::constant(q(2)).times(&t).plus(&Poly::constant(qf(1, 2)));
        assert_eq!(p.evaluate(1, &q(1)), Poly::constant(qf(5, 2)));
        assert!(t.minus(&Poly::one()).evaluate(1, &q(1)).is_zero());
        let p = Poly::parse_str("t1*t2 + t3").unwrap();
        assert_eq!(p.evaluate(2, &q(3)).to_string(), "3*t1 + t2");
    }

    #[test]
    fn grlex_order() {
        assert!(Mono::var(1, 1) > Mono::var(2, 1));
        assert!(Mono::var(2, 2) > Mono::var(1, 1));
        assert_eq!(Mono::all_up_to(2, 1).len(), 3);
    }
}
