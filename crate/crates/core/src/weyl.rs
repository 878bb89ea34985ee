//! Differential operators with polynomial coefficients in normal order
//! (all multiplications left of all derivatives), and the invariant
//! operators `Delta_ij`, `r^2_ij`, `h_ij`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::linalg;
use crate::ratpoly::{binomial, write_monomial, Ambient, Monomial, Polynomial};
use crate::{fmt_rational, Error, Rational, Result};

/// A normal-ordered Weyl algebra element `sum c * x^a * d^b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    ambient: Ambient,
    terms: BTreeMap<(Monomial, Monomial), Rational>,
}

impl WeylElement {
    pub fn zero(ambient: Ambient) -> Self {
        WeylElement {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ambient: Ambient, c: Rational) -> Self {
        let mut w = WeylElement::zero(ambient);
        let one = Monomial::one(ambient.nvars());
        w.add_term(one.clone(), one, c);
        w
    }

    /// Multiplication by the polynomial `p`.
    pub fn multiplication(p: &Polynomial) -> Self {
        let ambient = p.ambient();
        let one = Monomial::one(ambient.nvars());
        let mut w = WeylElement::zero(ambient);
        for (mono, c) in p.terms() {
            w.add_term(mono.clone(), one.clone(), c.clone());
        }
        w
    }

    /// `Delta_ij = sum_s d^i_s d^j_s`.
    pub fn laplacian(ambient: Ambient, i: usize, j: usize) -> Result<Self> {
        ambient.check_vector(i)?;
        ambient.check_vector(j)?;
        let n = ambient.nvars();
        let one = Monomial::one(n);
        let mut w = WeylElement::zero(ambient);
        for s in 0..ambient.m {
            let d = Monomial::var(n, (i - 1) * ambient.m + s, 1).mul(&Monomial::var(
                n,
                (j - 1) * ambient.m + s,
                1,
            ));
            w.add_term(one.clone(), d, Rational::one());
        }
        Ok(w)
    }

    /// Multiplication by `r^2_ij = sum_s x^i_s x^j_s`.
    pub fn rsquared(ambient: Ambient, i: usize, j: usize) -> Result<Self> {
        Ok(WeylElement::multiplication(&Polynomial::rsquared(
            ambient, i, j,
        )?))
    }

    /// `h_ij = sum_s x^i_s d^j_s + (m/2) delta_ij`.
    pub fn euler(ambient: Ambient, i: usize, j: usize) -> Result<Self> {
        ambient.check_vector(i)?;
        ambient.check_vector(j)?;
        let n = ambient.nvars();
        let mut w = WeylElement::zero(ambient);
        for s in 0..ambient.m {
            w.add_term(
                Monomial::var(n, (i - 1) * ambient.m + s, 1),
                Monomial::var(n, (j - 1) * ambient.m + s, 1),
                Rational::one(),
            );
        }
        if i == j {
            let one = Monomial::one(n);
            w.add_term(
                one.clone(),
                one,
                Rational::new((ambient.m as i64).into(), 2.into()),
            );
        }
        Ok(w)
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Normal-ordered terms `((x-part, d-part), coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &Rational)> {
        self.terms.iter()
    }

    /// Highest total degree of the derivative part.
    pub fn order(&self) -> u32 {
        self.terms
            .keys()
            .map(|(_, d)| d.degree())
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, x: Monomial, d: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((x, d)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_ambient(&self, other: Ambient) -> Result<()> {
        if self.ambient != other {
            Err(Error::AmbientMismatch(
                self.ambient.k,
                self.ambient.m,
                other.k,
                other.m,
            ))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &WeylElement) -> Result<WeylElement> {
        self.check_ambient(other.ambient)?;
        let mut out = self.clone();
        for ((x, d), c) in &other.terms {
            out.add_term(x.clone(), d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &WeylElement) -> Result<WeylElement> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> WeylElement {
        let mut out = WeylElement::zero(self.ambient);
        for ((x, d), a) in &self.terms {
            out.add_term(x.clone(), d.clone(), a * c);
        }
        out
    }

    /// Applies the operator to a polynomial.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        self.check_ambient(p.ambient())?;
        let mut terms = Vec::new();
        for ((x, d), c) in &self.terms {
            for (mono, a) in p.terms() {
                let Some(rest) = mono.div(d) else { continue };
                // d^b x^e = e!/(e-b)! x^(e-b)
                let mut falling = num_bigint::BigInt::one();
                for (&e, &b) in mono.exponents().iter().zip(d.exponents()) {
                    for t in 0..b {
                        falling *= e - t;
                    }
                }
                terms.push((rest.mul(x), c * a * Rational::from_integer(falling)));
            }
        }
        Ok(Polynomial::from_terms(self.ambient, terms))
    }

    /// Operator product `self . other`, brought back to normal order.
    pub fn compose(&self, other: &WeylElement) -> Result<WeylElement> {
        self.check_ambient(other.ambient)?;
        let mut out = WeylElement::zero(self.ambient);
        for ((a, b), c1) in &self.terms {
            for ((c, d), c2) in &other.terms {
                let coeff = c1 * c2;
                // d^b x^c = sum_g prod_v C(b_v, g_v) c_v!/(c_v - g_v)! x^(c-g) d^(b-g)
                let n = a.nvars();
                let overlap: Vec<usize> = (0..n)
                    .filter(|&v| b.exponent(v) > 0 && c.exponent(v) > 0)
                    .collect();
                let mut g = vec![0u32; n];
                leibniz(
                    &overlap,
                    0,
                    &mut g,
                    &mut |g| {
                        let mut w = num_bigint::BigInt::one();
                        for &v in &overlap {
                            let (bv, cv, gv) = (b.exponent(v), c.exponent(v), g[v]);
                            w *= num_bigint::BigInt::from(binomial(bv as u64, gv as u64));
                            for t in 0..gv {
                                w *= cv - t;
                            }
                        }
                        let gm = Monomial::from_exponents(g.to_vec());
                        let x = a.mul(&c.div(&gm).unwrap());
                        let dd = b.div(&gm).unwrap().mul(d);
                        out.add_term(x, dd, &coeff * Rational::from_integer(w));
                    },
                    b,
                    c,
                );
            }
        }
        Ok(out)
    }

    /// `[self, other] = self.other - other.self`.
    pub fn commutator(&self, other: &WeylElement) -> Result<WeylElement> {
        self.compose(other)?.sub(&other.compose(self)?)
    }
}

fn leibniz(
    overlap: &[usize],
    pos: usize,
    g: &mut [u32],
    f: &mut dyn FnMut(&[u32]),
    b: &Monomial,
    c: &Monomial,
) {
    if pos == overlap.len() {
        f(g);
        return;
    }
    let v = overlap[pos];
    for gv in 0..=b.exponent(v).min(c.exponent(v)) {
        g[v] = gv;
        leibniz(overlap, pos + 1, g, f, b, c);
    }
    g[v] = 0;
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // highest derivative order first, then highest x-part
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|((xa, da), _), ((xb, db), _)| db.cmp(da).then_with(|| xb.cmp(xa)));
        for (n, ((x, d), c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if x.is_one() && d.is_one() {
                f.write_str(&fmt_rational(&abs))?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{}*", fmt_rational(&abs))?;
            }
            if !x.is_one() {
                write_monomial(x, &self.ambient, f, 'x')?;
                if !d.is_one() {
                    f.write_str("*")?;
                }
            }
            if !d.is_one() {
                write_monomial(d, &self.ambient, f, 'd')?;
            }
        }
        Ok(())
    }
}

/// Coordinates of `w` in terms of `basis`, or `None` if `w` is not in the span.
pub fn span_membership(w: &WeylElement, basis: &[WeylElement]) -> Result<Option<Vec<Rational>>> {
    for b in basis {
        w.check_ambient(b.ambient)?;
    }
    let (rows, rhs) = coordinate_system(w, basis);
    Ok(linalg::solve(&rows, basis.len(), &rhs))
}

/// Dimension of the linear span of the given operators.
pub fn span_dimension(basis: &[WeylElement]) -> usize {
    let mut index: HashMap<&(Monomial, Monomial), usize> = HashMap::new();
    for b in basis {
        for key in b.terms.keys() {
            let n = index.len();
            index.entry(key).or_insert(n);
        }
    }
    let rows: Vec<Vec<Rational>> = basis
        .iter()
        .map(|b| {
            let mut v = vec![Rational::zero(); index.len()];
            for (key, c) in &b.terms {
                v[index[key]] = c.clone();
            }
            v
        })
        .collect();
    linalg::rank(&rows, index.len())
}

// One equation per normal-ordered term appearing anywhere; unknowns are the
// basis coefficients.
fn coordinate_system(
    w: &WeylElement,
    basis: &[WeylElement],
) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let mut keys: BTreeMap<&(Monomial, Monomial), usize> = BTreeMap::new();
    for key in basis
        .iter()
        .flat_map(|b| b.terms.keys())
        .chain(w.terms.keys())
    {
        let n = keys.len();
        keys.entry(key).or_insert(n);
    }
    let mut rows = vec![vec![Rational::zero(); basis.len()]; keys.len()];
    let mut rhs = vec![Rational::zero(); keys.len()];
    for (col, b) in basis.iter().enumerate() {
        for (key, c) in &b.terms {
            rows[keys[key]][col] = c.clone();
        }
    }
    for (key, c) in &w.terms {
        rhs[keys[key]] = c.clone();
    }
    (rows, rhs)
}

/// A named operator from the spanning set.
#[derive(Debug, Clone)]
pub struct NamedOperator {
    pub name: String,
    pub op: WeylElement,
}

/// `Delta_ij` and `r^2_ij` for `i <= j`, then `h_ij` for all `i, j`.
pub fn sp_spanning_set(ambient: Ambient) -> Vec<NamedOperator> {
    let k = ambient.k;
    let mut out = Vec::new();
    for i in 1..=k {
        for j in i..=k {
            out.push(NamedOperator {
                name: format!("D{i}{j}"),
                op: WeylElement::laplacian(ambient, i, j).unwrap(),
            });
        }
    }
    for i in 1..=k {
        for j in i..=k {
            out.push(NamedOperator {
                name: format!("R{i}{j}"),
                op: WeylElement::rsquared(ambient, i, j).unwrap(),
            });
        }
    }
    out.extend(gl_spanning_set(ambient));
    out
}

/// `h_ij` for all `i, j`.
pub fn gl_spanning_set(ambient: Ambient) -> Vec<NamedOperator> {
    let k = ambient.k;
    let mut out = Vec::new();
    for i in 1..=k {
        for j in 1..=k {
            out.push(NamedOperator {
                name: format!("H{i}{j}"),
                op: WeylElement::euler(ambient, i, j).unwrap(),
            });
        }
    }
    out
}

/// Result of bracketing every pair of a spanning set.
#[derive(Debug, Clone, Serialize)]
pub struct ClosureReport {
    pub k: usize,
    pub m: usize,
    pub span_dim: usize,
    pub expected_span_dim: usize,
    pub gl_dim: usize,
    pub expected_gl_dim: usize,
    pub pairs_checked: usize,
    /// Pairs whose commutator left the span.
    pub failures: Vec<(String, String)>,
    pub gl_failures: Vec<(String, String)>,
}

impl ClosureReport {
    pub fn closed(&self) -> bool {
        self.failures.is_empty()
            && self.gl_failures.is_empty()
            && self.span_dim == self.expected_span_dim
            && self.gl_dim == self.expected_gl_dim
    }
}

fn bracket_failures(set: &[NamedOperator]) -> (usize, Vec<(String, String)>) {
    let basis: Vec<WeylElement> = set.iter().map(|n| n.op.clone()).collect();
    let mut failures = Vec::new();
    let mut checked = 0;
    for (a, na) in set.iter().enumerate() {
        for nb in &set[a + 1..] {
            checked += 1;
            let c = na.op.commutator(&nb.op).unwrap();
            if span_membership(&c, &basis).unwrap().is_none() {
                failures.push((na.name.clone(), nb.name.clone()));
            }
        }
    }
    (checked, failures)
}

/// Checks that `{Delta_ij, r^2_ij, h_ij}` spans a Lie algebra of dimension
/// `k(2k+1)` and that the `h_ij` span one of dimension `k^2`.
pub fn lie_closure(ambient: Ambient) -> ClosureReport {
    let k = ambient.k;
    let sp = sp_spanning_set(ambient);
    let gl = gl_spanning_set(ambient);
    let (n1, failures) = bracket_failures(&sp);
    let (n2, gl_failures) = bracket_failures(&gl);
    ClosureReport {
        k,
        m: ambient.m,
        span_dim: span_dimension(&sp.iter().map(|n| n.op.clone()).collect::<Vec<_>>()),
        expected_span_dim: k * (2 * k + 1),
        gl_dim: span_dimension(&gl.iter().map(|n| n.op.clone()).collect::<Vec<_>>()),
        expected_gl_dim: k * k,
        pairs_checked: n1 + n2,
        failures,
        gl_failures,
    }
}

/// Parses operator expressions such as `[D11,R11] - 4*H11` built from the
/// literals `D{i}{j}`, `R{i}{j}`, `H{i}{j}`, brackets `[A,B]`, parentheses,
/// sums and rational multiples.
pub fn parse_operator(text: &str, ambient: Ambient) -> Result<WeylElement> {
    let mut p = OpParser {
        src: text.as_bytes(),
        pos: 0,
        ambient,
    };
    let w = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(w)
}

struct OpParser<'a> {
    src: &'a [u8],
    pos: usize,
    ambient: Ambient,
}

impl OpParser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(&format!("expected '{}'", c as char))
        }
    }

    fn expr(&mut self) -> Result<WeylElement> {
        let mut sign = Rational::one();
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -sign;
        }
        let mut acc = self.term()?.scale(&sign);
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<WeylElement> {
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let start = self.pos;
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'/')
            {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let Some(c) = crate::parse_rational(text) else {
                self.pos = start;
                return self.err("bad rational coefficient");
            };
            if self.peek() == Some(b'*') {
                self.pos += 1;
                return Ok(self.primary()?.scale(&c));
            }
            return Ok(WeylElement::constant(self.ambient, c));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<WeylElement> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b']')?;
                a.commutator(&b)
            }
            Some(b'(') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(b')')?;
                Ok(a)
            }
            Some(c @ (b'D' | b'R' | b'H')) => {
                self.pos += 1;
                let digit = |p: &mut Self| -> Result<usize> {
                    match p.src.get(p.pos) {
                        Some(d) if d.is_ascii_digit() => {
                            p.pos += 1;
                            Ok((d - b'0') as usize)
                        }
                        _ => p.err("expected single-digit index"),
                    }
                };
                let i = digit(self)?;
                let j = digit(self)?;
                match c {
                    b'D' => WeylElement::laplacian(self.ambient, i, j),
                    b'R' => WeylElement::rsquared(self.ambient, i, j),
                    _ => WeylElement::euler(self.ambient, i, j),
                }
            }
            _ => self.err("expected operator literal, '[' or '('"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{monomials_of_multidegree, MultiDegree};

    fn amb(k: usize, m: usize) -> Ambient {
        Ambient::new(k, m).unwrap()
    }

    fn p(s: &str, k: usize, m: usize) -> Polynomial {
        Polynomial::parse(s, k, m).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn apply_examples() {
        let a = amb(1, 2);
        let lap = WeylElement::laplacian(a, 1, 1).unwrap();
        assert!(lap.apply(&p("5/3", 1, 2)).unwrap().is_zero());
        assert_eq!(
            lap.apply(&p("x1_1^2 + x1_2^2", 1, 2)).unwrap(),
            p("4", 1, 2)
        );
        assert!(lap.apply(&Polynomial::zero(a)).unwrap().is_zero());

        let h = WeylElement::euler(a, 1, 1).unwrap();
        assert_eq!(h.apply(&p("x1_1", 1, 2)).unwrap(), p("2*x1_1", 1, 2));

        let r = WeylElement::rsquared(a, 1, 1).unwrap();
        let harm = p("x1_1^2 - x1_2^2", 1, 2);
        assert_eq!(r.apply(&harm).unwrap(), &p("x1_1^2 + x1_2^2", 1, 2) * &harm);

        let a3 = amb(2, 3);
        let r12 = WeylElement::rsquared(a3, 1, 2).unwrap();
        assert_eq!(
            r12.apply(&Polynomial::one(a3)).unwrap(),
            p("x1_1*x2_1 + x1_2*x2_2 + x1_3*x2_3", 2, 3)
        );
    }

    #[test]
    fn symmetric_and_out_of_range() {
        let a = amb(2, 3);
        assert_eq!(
            WeylElement::laplacian(a, 1, 2).unwrap(),
            WeylElement::laplacian(a, 2, 1).unwrap()
        );
        assert_eq!(
            WeylElement::rsquared(a, 1, 2).unwrap(),
            WeylElement::rsquared(a, 2, 1).unwrap()
        );
        assert!(WeylElement::laplacian(a, 0, 1).is_err());
        assert!(WeylElement::euler(a, 1, 3).is_err());
    }

    #[test]
    fn commutator_examples() {
        let a = amb(1, 3);
        let lap = WeylElement::laplacian(a, 1, 1).unwrap();
        let r = WeylElement::rsquared(a, 1, 1).unwrap();
        let h = WeylElement::euler(a, 1, 1).unwrap();
        assert!(lap.commutator(&lap).unwrap().is_zero());
        assert_eq!(lap.commutator(&r).unwrap(), h.scale(&q(4)));

        let a2 = amb(2, 3);
        let h = |i, j| WeylElement::euler(a2, i, j).unwrap();
        let lhs = h(1, 2).commutator(&h(2, 1)).unwrap();
        assert!(lhs.sub(&h(1, 1).sub(&h(2, 2)).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn span_membership_examples() {
        let a = amb(2, 3);
        let gl: Vec<_> = gl_spanning_set(a).into_iter().map(|n| n.op).collect();
        let zero = WeylElement::zero(a);
        assert_eq!(span_membership(&zero, &gl).unwrap(), Some(vec![q(0); 4]));

        let c = WeylElement::laplacian(a, 1, 2)
            .unwrap()
            .commutator(&WeylElement::rsquared(a, 1, 2).unwrap())
            .unwrap();
        let coeffs = span_membership(&c, &gl).unwrap().expect("in span");
        // [D12, R12] = h11 + h22
        assert_eq!(coeffs, vec![q(1), q(0), q(0), q(1)]);

        let r = WeylElement::rsquared(a, 1, 1).unwrap();
        assert!(span_membership(&r, &gl).unwrap().is_none());
    }

    #[test]
    fn closure_dimensions() {
        for (k, m) in [(1, 1), (1, 3), (2, 1), (2, 4)] {
            let rep = lie_closure(amb(k, m));
            assert!(rep.closed(), "{rep:?}");
            assert_eq!(rep.span_dim, k * (2 * k + 1));
            assert_eq!(rep.gl_dim, k * k);
        }
    }

    #[test]
    fn triangular_parts_are_subalgebras() {
        let a = amb(3, 2);
        let h = |i, j| WeylElement::euler(a, i, j).unwrap();
        let lower: Vec<_> = (1..=3)
            .flat_map(|i| ((i + 1)..=3).map(move |j| (i, j)))
            .map(|(i, j)| h(i, j))
            .collect();
        let upper: Vec<_> = (1..=3)
            .flat_map(|i| ((i + 1)..=3).map(move |j| (j, i)))
            .map(|(i, j)| h(i, j))
            .collect();
        for part in [&lower, &upper] {
            for x in part.iter() {
                for y in part.iter() {
                    let c = x.commutator(y).unwrap();
                    assert!(span_membership(&c, part).unwrap().is_some());
                }
            }
        }
        // k = 2: t_- is spanned by h12 alone, so brackets vanish
        let a2 = amb(2, 2);
        let h12 = WeylElement::euler(a2, 1, 2).unwrap();
        assert!(h12.commutator(&h12).unwrap().is_zero());
        // k = 3: brackets of brackets in t_- vanish
        for x in &lower {
            for y in &lower {
                let c = x.commutator(y).unwrap();
                for z in &lower {
                    assert!(c.commutator(z).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn grading_of_actions() {
        let a = amb(2, 2);
        let d = MultiDegree(vec![2, 3]);
        for mono in monomials_of_multidegree(&a, &d) {
            let poly = Polynomial::monomial(a, mono, q(1));
            let check = |w: WeylElement, want: Vec<u32>| {
                let out = w.apply(&poly).unwrap();
                if let Some(got) = out.homogeneous_multidegree().unwrap() {
                    assert_eq!(got.0, want);
                }
            };
            check(WeylElement::laplacian(a, 1, 2).unwrap(), vec![1, 2]);
            check(WeylElement::laplacian(a, 2, 2).unwrap(), vec![2, 1]);
            check(WeylElement::rsquared(a, 1, 1).unwrap(), vec![4, 3]);
            check(WeylElement::euler(a, 1, 2).unwrap(), vec![3, 2]);
            check(WeylElement::euler(a, 2, 1).unwrap(), vec![1, 4]);
        }
    }

    #[test]
    fn parse_operator_expressions() {
        let a = amb(2, 3);
        let w = parse_operator("[D11, R11] - 4*H11", a).unwrap();
        assert!(w.is_zero());
        let w = parse_operator("[H12,H21] - (H11 - H22)", a).unwrap();
        assert!(w.is_zero());
        assert!(parse_operator("[D11 R11]", a).is_err());
        assert!(parse_operator("D13", a).is_err());
        assert_eq!(
            parse_operator("H11", amb(1, 3)).unwrap().to_string(),
            "x1_1*d1_1 + x1_2*d1_2 + x1_3*d1_3 + 3/2"
        );
    }
}
