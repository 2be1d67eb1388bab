//! Sparse multivariate polynomials and fractions over the small coefficient
//! fields Q and F_p. These back the rank-n valuation-domain model: the value
//! of a polynomial is the lexicographically smallest exponent vector of its
//! support (coordinate 1 most significant), and fractions carry the valuation
//! by subtraction.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{inv_mod_u64, mul_mod_u64};
use crate::error::{AlgebraError, Result};

/// The coefficient field of the valuation model: Q or F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SmallField {
    Rat,
    Fp(u64),
}

impl fmt::Display for SmallField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SmallField::Rat => write!(f, "Q"),
            SmallField::Fp(p) => write!(f, "F{p}"),
        }
    }
}

/// A scalar in a [`SmallField`]. The field is carried alongside by the
/// containing polynomial; F_p values are kept reduced in [0, p).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KScalar {
    Rat(BigRational),
    Fp(u64),
}

impl KScalar {
    pub fn is_zero(&self) -> bool {
        match self {
            KScalar::Rat(r) => r.is_zero(),
            KScalar::Fp(v) => *v == 0,
        }
    }
}

impl SmallField {
    pub fn zero(&self) -> KScalar {
        match self {
            SmallField::Rat => KScalar::Rat(BigRational::zero()),
            SmallField::Fp(_) => KScalar::Fp(0),
        }
    }

    pub fn one(&self) -> KScalar {
        match self {
            SmallField::Rat => KScalar::Rat(BigRational::one()),
            SmallField::Fp(_) => KScalar::Fp(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> KScalar {
        match self {
            SmallField::Rat => KScalar::Rat(BigRational::from(BigInt::from(v))),
            SmallField::Fp(p) => {
                let m = v.rem_euclid(*p as i64) as u64;
                KScalar::Fp(m)
            }
        }
    }

    pub fn from_rational(&self, r: &BigRational) -> Result<KScalar> {
        match self {
            SmallField::Rat => Ok(KScalar::Rat(r.clone())),
            SmallField::Fp(p) => {
                let pb = BigInt::from(*p);
                let num = r.numer().mod_floor_big(&pb);
                let den = r.denom().mod_floor_big(&pb);
                let den_inv = inv_mod_u64(den, *p).ok_or_else(|| {
                    AlgebraError::RingMismatch(format!("denominator of {r} vanishes mod {p}"))
                })?;
                Ok(KScalar::Fp(mul_mod_u64(num, den_inv, *p)))
            }
        }
    }

    pub fn add(&self, a: &KScalar, b: &KScalar) -> KScalar {
        match (self, a, b) {
            (SmallField::Rat, KScalar::Rat(x), KScalar::Rat(y)) => KScalar::Rat(x + y),
            (SmallField::Fp(p), KScalar::Fp(x), KScalar::Fp(y)) => KScalar::Fp((x + y) % p),
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn neg(&self, a: &KScalar) -> KScalar {
        match (self, a) {
            (SmallField::Rat, KScalar::Rat(x)) => KScalar::Rat(-x),
            (SmallField::Fp(p), KScalar::Fp(x)) => KScalar::Fp(if *x == 0 { 0 } else { p - x }),
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn sub(&self, a: &KScalar, b: &KScalar) -> KScalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &KScalar, b: &KScalar) -> KScalar {
        match (self, a, b) {
            (SmallField::Rat, KScalar::Rat(x), KScalar::Rat(y)) => KScalar::Rat(x * y),
            (SmallField::Fp(p), KScalar::Fp(x), KScalar::Fp(y)) => {
                KScalar::Fp(mul_mod_u64(*x, *y, *p))
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn inv(&self, a: &KScalar) -> Result<KScalar> {
        match (self, a) {
            (SmallField::Rat, KScalar::Rat(x)) => {
                if x.is_zero() {
                    Err(AlgebraError::ZeroElement("inverse of 0".into()))
                } else {
                    Ok(KScalar::Rat(x.recip()))
                }
            }
            (SmallField::Fp(p), KScalar::Fp(x)) => inv_mod_u64(*x, *p)
                .map(KScalar::Fp)
                .ok_or_else(|| AlgebraError::ZeroElement("inverse of 0".into())),
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn div(&self, a: &KScalar, b: &KScalar) -> Result<KScalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }
}

trait ModFloor {
    fn mod_floor_big(&self, m: &BigInt) -> u64;
}

impl ModFloor for BigInt {
    fn mod_floor_big(&self, m: &BigInt) -> u64 {
        use num_integer::Integer;
        let r = self.mod_floor(m);
        let (_, digits) = r.to_u64_digits();
        if digits.is_empty() {
            0
        } else {
            digits[0]
        }
    }
}

/// An exponent vector; coordinate 0 is the most significant in lex order.
pub type Mono = Vec<u32>;

fn mono_lex_cmp(a: &Mono, b: &Mono) -> Ordering {
    a.cmp(b) // Vec<u32> Ord is lexicographic with index 0 first
}

/// Element of Z^n under lexicographic order, or Infinity (the value of 0).
/// Coordinate 1 (index 0) is most significant; Infinity exceeds every tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ValueVector {
    Finite(Vec<i64>),
    Infinity,
}

impl ValueVector {
    pub fn zero(n: usize) -> Self {
        ValueVector::Finite(vec![0; n])
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ValueVector::Infinity)
    }

    /// Componentwise sum; Infinity absorbs.
    pub fn add(&self, other: &ValueVector) -> ValueVector {
        match (self, other) {
            (ValueVector::Finite(a), ValueVector::Finite(b)) => {
                assert_eq!(a.len(), b.len(), "value vector length mismatch");
                ValueVector::Finite(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            _ => ValueVector::Infinity,
        }
    }

    pub fn sub(&self, other: &ValueVector) -> ValueVector {
        match (self, other) {
            (ValueVector::Finite(a), ValueVector::Finite(b)) => {
                assert_eq!(a.len(), b.len(), "value vector length mismatch");
                ValueVector::Finite(a.iter().zip(b).map(|(x, y)| x - y).collect())
            }
            (ValueVector::Infinity, _) => ValueVector::Infinity,
            _ => panic!("cannot subtract Infinity"),
        }
    }

    /// True iff the first `j` coordinates are all zero (vacuously for Infinity: false).
    pub fn prefix_is_zero(&self, j: usize) -> bool {
        match self {
            ValueVector::Finite(c) => c.iter().take(j).all(|&x| x == 0),
            ValueVector::Infinity => false,
        }
    }

    /// Lex comparison of the first `j` coordinates against zero.
    pub fn prefix_cmp_zero(&self, j: usize) -> Ordering {
        match self {
            ValueVector::Infinity => Ordering::Greater,
            ValueVector::Finite(c) => {
                for &x in c.iter().take(j) {
                    match x.cmp(&0) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn coords(&self) -> Option<&[i64]> {
        match self {
            ValueVector::Finite(c) => Some(c),
            ValueVector::Infinity => None,
        }
    }
}

impl PartialOrd for ValueVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ValueVector {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ValueVector::Infinity, ValueVector::Infinity) => Ordering::Equal,
            (ValueVector::Infinity, _) => Ordering::Greater,
            (_, ValueVector::Infinity) => Ordering::Less,
            (ValueVector::Finite(a), ValueVector::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ValueVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueVector::Infinity => write!(f, "inf"),
            ValueVector::Finite(c) => {
                write!(f, "(")?;
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Sparse multivariate polynomial over a [`SmallField`] in a fixed number of
/// variables. Terms are kept in lex order of exponent vectors; zero terms are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KPoly {
    pub field: SmallField,
    pub nvars: usize,
    pub terms: BTreeMap<Mono, KScalar>,
}

impl KPoly {
    pub fn zero(field: SmallField, nvars: usize) -> Self {
        KPoly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: SmallField, nvars: usize, c: KScalar) -> Self {
        let mut p = KPoly::zero(field, nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(field: SmallField, nvars: usize) -> Self {
        let c = field.one();
        KPoly::constant(field, nvars, c)
    }

    /// The monomial c * t^expo.
    pub fn monomial(field: SmallField, nvars: usize, expo: Mono, c: KScalar) -> Self {
        assert_eq!(expo.len(), nvars);
        let mut p = KPoly::zero(field, nvars);
        if !c.is_zero() {
            p.terms.insert(expo, c);
        }
        p
    }

    /// The variable t_{idx} (0-based).
    pub fn var(field: SmallField, nvars: usize, idx: usize) -> Self {
        assert!(idx < nvars);
        let mut e = vec![0u32; nvars];
        e[idx] = 1;
        KPoly::monomial(field, nvars, e, field.one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    /// The constant coefficient if the polynomial is constant.
    pub fn as_constant(&self) -> Option<KScalar> {
        if self.is_zero() {
            return Some(self.field.zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    fn insert_term(&mut self, m: Mono, c: KScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = self.field.add(existing, &c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &KPoly) -> KPoly {
        assert_eq!(self.field, other.field);
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> KPoly {
        let mut out = KPoly::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), self.field.neg(c));
        }
        out
    }

    pub fn sub(&self, other: &KPoly) -> KPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &KPoly) -> KPoly {
        assert_eq!(self.field, other.field);
        assert_eq!(self.nvars, other.nvars);
        let mut out = KPoly::zero(self.field, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Mono = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                out.insert_term(m, self.field.mul(ca, cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &KScalar) -> KPoly {
        if c.is_zero() {
            return KPoly::zero(self.field, self.nvars);
        }
        let mut out = KPoly::zero(self.field, self.nvars);
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), self.field.mul(a, c));
        }
        out
    }

    pub fn mul_monomial(&self, expo: &Mono) -> KPoly {
        let mut out = KPoly::zero(self.field, self.nvars);
        for (m, a) in &self.terms {
            let shifted: Mono = m.iter().zip(expo).map(|(x, y)| x + y).collect();
            out.terms.insert(shifted, a.clone());
        }
        out
    }

    /// Min-lex exponent vector of the support; the valuation of the monomial model.
    pub fn min_lex(&self) -> ValueVector {
        match self.terms.keys().next() {
            None => ValueVector::Infinity,
            Some(m) => ValueVector::Finite(m.iter().map(|&e| e as i64).collect()),
        }
    }

    /// Coefficient at the min-lex monomial (None for the zero polynomial).
    pub fn min_lex_coeff(&self) -> Option<&KScalar> {
        self.terms.values().next()
    }

    /// Coordinatewise minimum of the support exponents: the largest monomial
    /// dividing every term.
    pub fn coordwise_min(&self) -> Option<Mono> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, m| {
            acc.iter().zip(m).map(|(a, b)| (*a).min(*b)).collect()
        }))
    }

    /// Divide by a monomial that divides every term.
    pub fn div_monomial(&self, expo: &Mono) -> KPoly {
        let mut out = KPoly::zero(self.field, self.nvars);
        for (m, a) in &self.terms {
            let shifted: Mono = m
                .iter()
                .zip(expo)
                .map(|(x, y)| x.checked_sub(*y).expect("monomial does not divide"))
                .collect();
            out.terms.insert(shifted, a.clone());
        }
        out
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as usize).sum())
            .max()
            .unwrap_or(0)
    }

    /// Degree in one variable.
    pub fn degree_in(&self, idx: usize) -> usize {
        self.terms.keys().map(|m| m[idx] as usize).max().unwrap_or(0)
    }

    /// Sum of the terms whose first `j` exponents form the lex-minimal prefix,
    /// with the shared prefix and the first j variables stripped: the image
    /// under the chain-prime reduction map. Returns a polynomial in nvars - j
    /// variables.
    pub fn leading_prefix_part(&self, j: usize) -> KPoly {
        assert!(j <= self.nvars);
        if self.is_zero() {
            return KPoly::zero(self.field, self.nvars - j);
        }
        let beta: Vec<u32> = {
            let mut best: Option<&Mono> = None;
            for m in self.terms.keys() {
                match best {
                    None => best = Some(m),
                    Some(b) => {
                        if mono_lex_cmp(&m[..j].to_vec(), &b[..j].to_vec()) == Ordering::Less {
                            best = Some(m);
                        }
                    }
                }
            }
            best.unwrap()[..j].to_vec()
        };
        let mut out = KPoly::zero(self.field, self.nvars - j);
        for (m, c) in &self.terms {
            if m[..j] == beta[..] {
                out.terms.insert(m[j..].to_vec(), c.clone());
            }
        }
        out
    }

    /// View the polynomial as univariate in variable `idx`, returning the map
    /// exponent -> coefficient polynomial (same nvars, with idx zeroed).
    pub fn coeffs_in_var(&self, idx: usize) -> BTreeMap<u32, KPoly> {
        let mut out: BTreeMap<u32, KPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m[idx];
            let mut rest = m.clone();
            rest[idx] = 0;
            out.entry(e)
                .or_insert_with(|| KPoly::zero(self.field, self.nvars))
                .insert_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    fn from_coeffs_in_var(
        field: SmallField,
        nvars: usize,
        idx: usize,
        coeffs: &BTreeMap<u32, KPoly>,
    ) -> KPoly {
        let mut out = KPoly::zero(field, nvars);
        for (e, p) in coeffs {
            for (m, c) in &p.terms {
                let mut me = m.clone();
                me[idx] += e;
                out.insert_term(me, c.clone());
            }
        }
        out
    }

    /// Exact division; None if the divisor does not divide exactly.
    pub fn div_exact(&self, divisor: &KPoly) -> Option<KPoly> {
        assert_eq!(self.field, divisor.field);
        assert_eq!(self.nvars, divisor.nvars);
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(KPoly::zero(self.field, self.nvars));
        }
        // divide by the lex-largest term of the divisor repeatedly
        let (dlead_m, dlead_c) = divisor.terms.iter().next_back().unwrap();
        let dlead_m = dlead_m.clone();
        let dlead_c = dlead_c.clone();
        let mut rem = self.clone();
        let mut quot = KPoly::zero(self.field, self.nvars);
        while !rem.is_zero() {
            let (rlead_m, rlead_c) = rem.terms.iter().next_back().unwrap();
            let mut q_m = Vec::with_capacity(self.nvars);
            for (a, b) in rlead_m.iter().zip(&dlead_m) {
                if a < b {
                    return None;
                }
                q_m.push(a - b);
            }
            let q_c = self.field.div(rlead_c, &dlead_c).ok()?;
            let term = KPoly::monomial(self.field, self.nvars, q_m, q_c);
            rem = rem.sub(&term.mul(divisor));
            quot = quot.add(&term);
        }
        Some(quot)
    }

    /// Content-and-primitive-part multivariate gcd. Monic-normalized: the
    /// result's lex-largest coefficient is 1 (or the zero polynomial).
    pub fn gcd(&self, other: &KPoly) -> KPoly {
        let g = gcd_rec(self, other, self.nvars);
        normalize_lead(&g)
    }

    /// Partial derivative in variable idx.
    pub fn derivative(&self, idx: usize) -> KPoly {
        let mut out = KPoly::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m[idx];
            if e == 0 {
                continue;
            }
            let mut me = m.clone();
            me[idx] -= 1;
            let factor = self.field.from_i64(e as i64);
            out.insert_term(me, self.field.mul(c, &factor));
        }
        out
    }

    /// Substitute each variable by the given univariate image exponents
    /// (Kronecker substitution): t_i -> T^{weights[i]}. Returns the list of
    /// (exponent, coefficient) pairs of the univariate image, combined.
    pub fn kronecker_image(&self, weights: &[u64]) -> BTreeMap<u64, KScalar> {
        let mut out: BTreeMap<u64, KScalar> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e: u64 = m.iter().zip(weights).map(|(x, w)| *x as u64 * w).sum();
            match out.get_mut(&e) {
                Some(v) => {
                    let s = self.field.add(v, c);
                    if s.is_zero() {
                        out.remove(&e);
                    } else {
                        *v = s;
                    }
                }
                None => {
                    out.insert(e, c.clone());
                }
            }
        }
        out
    }

    /// Inverse of kronecker_image for a mixed-radix weight vector; None if a
    /// term does not decode to digits within the bounds.
    pub fn kronecker_decode(
        field: SmallField,
        nvars: usize,
        image: &BTreeMap<u64, KScalar>,
        bounds: &[u64],
    ) -> Option<KPoly> {
        let mut out = KPoly::zero(field, nvars);
        for (e, c) in image {
            let mut rest = *e;
            let mut mono = vec![0u32; nvars];
            for (i, b) in bounds.iter().enumerate() {
                mono[i] = (rest % b) as u32;
                rest /= b;
            }
            if rest != 0 {
                return None;
            }
            out.insert_term(mono, c.clone());
        }
        Some(out)
    }

    /// Drop the first j variables (they must not occur).
    pub fn drop_leading_vars(&self, j: usize) -> KPoly {
        let mut out = KPoly::zero(self.field, self.nvars - j);
        for (m, c) in &self.terms {
            assert!(m[..j].iter().all(|&e| e == 0), "variable still occurs");
            out.terms.insert(m[j..].to_vec(), c.clone());
        }
        out
    }

    /// Add j fresh leading variables (with exponent 0 everywhere).
    pub fn lift_leading_vars(&self, j: usize) -> KPoly {
        let mut out = KPoly::zero(self.field, self.nvars + j);
        for (m, c) in &self.terms {
            let mut me = vec![0u32; j];
            me.extend_from_slice(m);
            out.terms.insert(me, c.clone());
        }
        out
    }
}

/// Scale so the lex-largest coefficient is 1.
fn normalize_lead(p: &KPoly) -> KPoly {
    match p.terms.values().next_back() {
        None => p.clone(),
        Some(c) => {
            let inv = p.field.inv(c).expect("nonzero leading coefficient");
            p.scale(&inv)
        }
    }
}

fn gcd_rec(a: &KPoly, b: &KPoly, nvars_active: usize) -> KPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if nvars_active == 0 {
        return KPoly::one(a.field, a.nvars);
    }
    let main = nvars_active - 1; // recurse from the last variable inward
    let da = a.degree_in(main);
    let db = b.degree_in(main);
    if da == 0 && db == 0 {
        return gcd_rec(a, b, nvars_active - 1);
    }
    // content = gcd of coefficients w.r.t. main var (computed recursively)
    let content = |p: &KPoly| -> KPoly {
        let coeffs = p.coeffs_in_var(main);
        let mut g = KPoly::zero(p.field, p.nvars);
        for c in coeffs.values() {
            g = gcd_rec(&g, c, nvars_active - 1);
        }
        g
    };
    let ca = content(a);
    let cb = content(b);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let cg = gcd_rec(&ca, &cb, nvars_active - 1);
    // primitive PRS in the main variable
    let (mut f, mut g) = if pa.degree_in(main) >= pb.degree_in(main) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    loop {
        if g.is_zero() {
            break;
        }
        let r = pseudo_rem_in_var(&f, &g, main);
        let rc = content(&r);
        let rp = if r.is_zero() { r } else { r.div_exact(&rc).expect("content divides") };
        f = g;
        g = rp;
        if f.degree_in(main) == 0 && g.is_zero() {
            break;
        }
    }
    // f is the primitive gcd candidate (up to content); combine with content gcd
    let fc = content(&f);
    let fp = if f.is_zero() { f.clone() } else { f.div_exact(&fc).expect("content divides") };
    let prim = if f.degree_in(main) == 0 && fp.is_constant() {
        KPoly::one(a.field, a.nvars)
    } else {
        fp
    };
    cg.mul(&prim)
}

fn pseudo_rem_in_var(f: &KPoly, g: &KPoly, var: usize) -> KPoly {
    let dg = g.degree_in(var);
    let g_coeffs = g.coeffs_in_var(var);
    let g_lead = g_coeffs.get(&(dg as u32)).expect("nonzero divisor").clone();
    let mut r = f.clone();
    while !r.is_zero() {
        let dr = r.degree_in(var);
        if dr < dg || (dr == 0 && dg == 0) {
            break;
        }
        let r_coeffs = r.coeffs_in_var(var);
        let r_lead = match r_coeffs.get(&(dr as u32)) {
            Some(c) => c.clone(),
            None => break,
        };
        // r <- g_lead * r - r_lead * t^(dr-dg) * g
        let mut shift = vec![0u32; f.nvars];
        shift[var] = (dr - dg) as u32;
        let sub = r_lead.mul_monomial(&shift).mul(g);
        r = g_lead.mul(&r).sub(&sub);
        if r.degree_in(var) >= dr && !r.is_zero() {
            // defensive: must strictly decrease
            panic!("pseudo remainder did not reduce degree");
        }
        if dg == 0 {
            break;
        }
    }
    r
}

/// A reduced fraction of multivariate polynomials over a small field.
/// Canonical form: num/den reduced by their gcd, den's lex-largest
/// coefficient is 1, and the zero fraction is 0/1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KFrac {
    pub num: KPoly,
    pub den: KPoly,
}

impl KFrac {
    pub fn new(num: KPoly, den: KPoly) -> Result<KFrac> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroElement("fraction with zero denominator".into()));
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: KPoly, den: KPoly) -> KFrac {
        let field = num.field;
        let nvars = num.nvars;
        if num.is_zero() {
            return KFrac { num, den: KPoly::one(field, nvars) };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        // also strip the common monomial factor (cheap and keeps values small)
        if let (Some(mn), Some(md)) = (n.coordwise_min(), d.coordwise_min()) {
            let shared: Mono = mn.iter().zip(&md).map(|(a, b)| (*a).min(*b)).collect();
            if shared.iter().any(|&e| e > 0) {
                n = n.div_monomial(&shared);
                d = d.div_monomial(&shared);
            }
        }
        let lead = d.terms.values().next_back().expect("nonzero denominator");
        let inv = field.inv(lead).expect("nonzero leading coefficient");
        KFrac { num: n.scale(&inv), den: d.scale(&inv) }
    }

    pub fn from_poly(p: KPoly) -> KFrac {
        let field = p.field;
        let nvars = p.nvars;
        KFrac { num: p, den: KPoly::one(field, nvars) }
    }

    pub fn zero(field: SmallField, nvars: usize) -> KFrac {
        KFrac::from_poly(KPoly::zero(field, nvars))
    }

    pub fn one(field: SmallField, nvars: usize) -> KFrac {
        KFrac::from_poly(KPoly::one(field, nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn field(&self) -> SmallField {
        self.num.field
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars
    }

    pub fn add(&self, other: &KFrac) -> KFrac {
        KFrac::reduced(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> KFrac {
        KFrac { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &KFrac) -> KFrac {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &KFrac) -> KFrac {
        KFrac::reduced(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Result<KFrac> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroElement("inverse of 0".into()));
        }
        Ok(KFrac::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &KFrac) -> Result<KFrac> {
        Ok(self.mul(&other.inv()?))
    }

    /// v(num) - v(den) as a value vector; Infinity iff zero.
    pub fn value(&self) -> ValueVector {
        if self.is_zero() {
            return ValueVector::Infinity;
        }
        self.num.min_lex().sub(&self.den.min_lex())
    }

    /// Image under the chain reduction map killing the first j variables:
    /// keep only the lex-minimal prefix parts of num and den and strip the
    /// prefix. Returns None when the fraction lies in the kernel (prefix of
    /// the value is lex-positive) and the reduced fraction otherwise. The
    /// caller must ensure the value's first-j prefix is >= 0.
    pub fn reduce_prefix(&self, j: usize) -> Option<KFrac> {
        if self.is_zero() {
            return None;
        }
        match self.value().prefix_cmp_zero(j) {
            Ordering::Greater => None,
            Ordering::Less => panic!("element not in the valuation ring for prefix {j}"),
            Ordering::Equal => {
                let n = self.num.leading_prefix_part(j);
                let d = self.den.leading_prefix_part(j);
                Some(KFrac::reduced(n, d))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> SmallField {
        SmallField::Rat
    }

    fn t(i: usize, n: usize) -> KPoly {
        KPoly::var(q(), n, i)
    }

    #[test]
    fn lex_order_coordinate_one_dominates() {
        // (0,1) < (1,0): coordinate 1 most significant
        let a = ValueVector::Finite(vec![0, 1]);
        let b = ValueVector::Finite(vec![1, 0]);
        assert!(a < b);
        assert!(ValueVector::Infinity > b);
    }

    #[test]
    fn min_lex_of_t1sq_plus_t2() {
        // t1^2 + t2 has support {(2,0),(0,1)}; min-lex is (0,1)
        let p = t(0, 2).mul(&t(0, 2)).add(&t(1, 2));
        assert_eq!(p.min_lex(), ValueVector::Finite(vec![0, 1]));
    }

    #[test]
    fn fraction_values() {
        // t1 -> (1,0)
        let f = KFrac::from_poly(t(0, 2));
        assert_eq!(f.value(), ValueVector::Finite(vec![1, 0]));
        // (t1^2 + t2)/t1 -> (-1, 1), lex-negative
        let num = t(0, 2).mul(&t(0, 2)).add(&t(1, 2));
        let g = KFrac::new(num, t(0, 2)).unwrap();
        assert_eq!(g.value(), ValueVector::Finite(vec![-1, 1]));
        assert_eq!(g.value().prefix_cmp_zero(2), Ordering::Less);
    }

    #[test]
    fn valuation_law_products() {
        let a = KFrac::new(t(0, 2).add(&t(1, 2)), KPoly::one(q(), 2)).unwrap();
        let b = KFrac::from_poly(t(1, 2));
        let prod = a.mul(&b);
        assert_eq!(prod.value(), a.value().add(&b.value()));
        // v(t1 + t2) = (0,1) since (0,1) < (1,0)
        assert_eq!(a.value(), ValueVector::Finite(vec![0, 1]));
    }

    #[test]
    fn gcd_and_reduction() {
        // (t1^2 t2 + t1^3)/(t1^2 + t1^2 t2) reduces to (t2 + t1)/(1 + t2)
        let n = t(0, 2).mul(&t(0, 2)).mul(&t(1, 2)).add(&t(0, 2).mul(&t(0, 2)).mul(&t(0, 2)));
        let d = t(0, 2).mul(&t(0, 2)).add(&t(0, 2).mul(&t(0, 2)).mul(&t(1, 2)));
        let f = KFrac::new(n, d).unwrap();
        assert_eq!(f.value(), ValueVector::Finite(vec![0, 1]));
        // reduce mod P_1 (kill t1): image is t2/(1+t2) in one variable
        let r = f.reduce_prefix(1).unwrap();
        assert_eq!(r.nvars(), 1);
        let t2 = KPoly::var(q(), 1, 0);
        let expect = KFrac::new(t2.clone(), KPoly::one(q(), 1).add(&t2)).unwrap();
        assert_eq!(r, expect);
    }

    #[test]
    fn exact_division() {
        let a = t(0, 2).add(&KPoly::one(q(), 2)); // t1 + 1
        let b = t(1, 2).sub(&KPoly::one(q(), 2)); // t2 - 1
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(prod.div_exact(&t(0, 2)).is_none());
    }

    #[test]
    fn prefix_reduction_kills_members() {
        // t1 * t2 lies in P_1 (prefix (1) nonzero): reduce_prefix(1) -> None
        let f = KFrac::from_poly(t(0, 2).mul(&t(1, 2)));
        assert!(f.reduce_prefix(1).is_none());
        // t2 survives: image is t2
        let g = KFrac::from_poly(t(1, 2));
        let r = g.reduce_prefix(1).unwrap();
        assert_eq!(r, KFrac::from_poly(KPoly::var(q(), 1, 0)));
    }
}
