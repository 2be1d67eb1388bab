//! Polynomials over a base ring in a fixed ordered list of variables,
//! realized as univariate-over-nested values: a `Value` is either a scalar
//! ring element or a dense polynomial in one variable whose coefficients only
//! mention earlier variables.
//!
//! Canonical form: a polynomial node has degree >= 1, a nonzero leading
//! coefficient, and canonical coefficients. Degree-zero nodes collapse into
//! their constant coefficient.

use crate::error::{AlgebraError, Result};
use crate::ring::{Elem, Ring};

pub type VarIdx = usize;

/// The ambient polynomial ring: a scalar base ring plus an ordered variable list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ambient {
    pub ring: Ring,
    pub vars: Vec<String>,
}

impl Ambient {
    pub fn new(ring: Ring, vars: Vec<String>) -> Ambient {
        Ambient { ring, vars }
    }

    pub fn top_var(&self) -> Option<VarIdx> {
        self.vars.len().checked_sub(1)
    }
}

/// A polynomial node: dense coefficients indexed by exponent in `var`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyNode {
    pub var: VarIdx,
    pub coeffs: Vec<Value>,
}

/// A polynomial-ring element in canonical nested form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    S(Elem),
    P(Box<PolyNode>),
}

impl Value {
    pub fn scalar(e: Elem) -> Value {
        Value::S(e)
    }

    /// Canonicalizing polynomial constructor: trims trailing zeros and
    /// collapses degree-zero nodes.
    pub fn poly(var: VarIdx, mut coeffs: Vec<Value>) -> Value {
        while coeffs.len() > 1 && coeffs.last().map(Value::is_zero_rep) == Some(true) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            panic!("empty coefficient list");
        }
        if coeffs.len() == 1 {
            return coeffs.pop().unwrap();
        }
        debug_assert!(coeffs.iter().all(|c| c.max_var().map_or(true, |v| v < var)));
        Value::P(Box::new(PolyNode { var, coeffs }))
    }

    /// Syntactic zero test (canonical representatives make this exact for
    /// every scalar ring the polynomial layer is used over).
    pub fn is_zero_rep(&self) -> bool {
        match self {
            Value::S(e) => e.rep_is_zero(),
            Value::P(_) => false,
        }
    }

    pub fn as_scalar(&self) -> Option<&Elem> {
        match self {
            Value::S(e) => Some(e),
            Value::P(_) => None,
        }
    }

    /// Largest variable index mentioned, None for scalars.
    pub fn max_var(&self) -> Option<VarIdx> {
        match self {
            Value::S(_) => None,
            Value::P(p) => Some(p.var),
        }
    }

    /// Degree in `var`. Scalars and polynomials in other variables have
    /// degree 0; the zero value also reports 0 (callers track zeroness).
    pub fn degree_in(&self, var: VarIdx) -> usize {
        match self {
            Value::S(_) => 0,
            Value::P(p) => {
                if p.var == var {
                    p.coeffs.len() - 1
                } else if p.var < var {
                    0
                } else {
                    p.coeffs.iter().map(|c| c.degree_in(var)).max().unwrap_or(0)
                }
            }
        }
    }

    /// Total degree across all polynomial variables.
    pub fn total_degree(&self) -> usize {
        match self {
            Value::S(_) => 0,
            Value::P(p) => p
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero_rep())
                .map(|(i, c)| i + c.total_degree())
                .max()
                .unwrap_or(0),
        }
    }

    /// Coefficient of var^k, viewing the value as univariate in `var`
    /// (which must be >= every variable mentioned).
    pub fn coeff_in(&self, var: VarIdx, k: usize, ring: &Ring) -> Value {
        match self {
            Value::P(p) if p.var == var => {
                p.coeffs.get(k).cloned().unwrap_or_else(|| Value::S(ring.zero()))
            }
            _ => {
                debug_assert!(self.max_var().map_or(true, |v| v < var));
                if k == 0 {
                    self.clone()
                } else {
                    Value::S(ring.zero())
                }
            }
        }
    }

    pub fn add(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::S(a), Value::S(b)) => Value::S(a.add(b)),
            (Value::P(p), Value::P(q)) if p.var == q.var => {
                let n = p.coeffs.len().max(q.coeffs.len());
                let mut coeffs = Vec::with_capacity(n);
                for i in 0..n {
                    let x = p.coeffs.get(i);
                    let y = q.coeffs.get(i);
                    coeffs.push(match (x, y) {
                        (Some(a), Some(b)) => a.add(b),
                        (Some(a), None) => a.clone(),
                        (None, Some(b)) => b.clone(),
                        (None, None) => unreachable!(),
                    });
                }
                Value::poly(p.var, coeffs)
            }
            (Value::P(p), other) if other.max_var().map_or(true, |v| v < p.var) => {
                let mut coeffs = p.coeffs.clone();
                coeffs[0] = coeffs[0].add(other);
                Value::poly(p.var, coeffs)
            }
            (this, Value::P(_)) => other.add(this),
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> Value {
        match self {
            Value::S(e) => Value::S(e.neg()),
            Value::P(p) => Value::P(Box::new(PolyNode {
                var: p.var,
                coeffs: p.coeffs.iter().map(Value::neg).collect(),
            })),
        }
    }

    pub fn sub(&self, other: &Value) -> Value {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::S(a), Value::S(b)) => Value::S(a.mul(b)),
            (Value::P(p), Value::P(q)) if p.var == q.var => {
                if self.is_zero_rep() || other.is_zero_rep() {
                    unreachable!("polynomial nodes are nonzero");
                }
                let zero = find_zero_like(&p.coeffs[0]);
                let mut coeffs = vec![zero; p.coeffs.len() + q.coeffs.len() - 1];
                for (i, a) in p.coeffs.iter().enumerate() {
                    if a.is_zero_rep() {
                        continue;
                    }
                    for (j, b) in q.coeffs.iter().enumerate() {
                        if b.is_zero_rep() {
                            continue;
                        }
                        coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                    }
                }
                Value::poly(p.var, coeffs)
            }
            (Value::P(p), other) if other.max_var().map_or(true, |v| v < p.var) => {
                if other.is_zero_rep() {
                    return other.clone();
                }
                let coeffs = p.coeffs.iter().map(|c| c.mul(other)).collect();
                Value::poly(p.var, coeffs)
            }
            (this, Value::P(_)) => other.mul(this),
            _ => unreachable!(),
        }
    }

    /// Multiply by var^k.
    pub fn mul_var_pow(&self, var: VarIdx, k: usize, ring: &Ring) -> Value {
        if k == 0 || self.is_zero_rep() {
            return self.clone();
        }
        match self {
            Value::P(p) if p.var == var => {
                let mut coeffs = vec![Value::S(ring.zero()); k];
                coeffs.extend(p.coeffs.iter().cloned());
                Value::poly(var, coeffs)
            }
            v if v.max_var().map_or(true, |m| m < var) => {
                let mut coeffs = vec![Value::S(ring.zero()); k];
                coeffs.push(v.clone());
                Value::poly(var, coeffs)
            }
            _ => panic!("mul_var_pow: value mentions a higher variable"),
        }
    }

    /// The variable var as a value.
    pub fn var(var: VarIdx, ring: &Ring) -> Value {
        Value::poly(var, vec![Value::S(ring.zero()), Value::S(ring.one())])
    }

    pub fn pow(&self, e: u32, ring: &Ring) -> Value {
        let mut acc = Value::S(ring.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

fn find_zero_like(sample: &Value) -> Value {
    match sample {
        Value::S(e) => Value::S(e.sub(e)),
        Value::P(p) => find_zero_like(&p.coeffs[0]),
    }
}

/// Leading data of a nonzero value in its main variable: (degree, leading
/// coefficient). A nonzero constant reports degree 0 with itself as lc.
pub fn leading_data(f: &Value) -> Result<(usize, Value)> {
    if f.is_zero_rep() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    match f {
        Value::S(_) => Ok((0, f.clone())),
        Value::P(p) => Ok((p.coeffs.len() - 1, p.coeffs.last().unwrap().clone())),
    }
}

/// True iff f, viewed in `var`, has positive degree and leading coefficient
/// exactly the ring's 1.
pub fn is_monic_in(f: &Value, var: VarIdx, ring: &Ring) -> bool {
    match f {
        Value::P(p) if p.var == var => match p.coeffs.last().unwrap() {
            Value::S(e) => *e == ring.one(),
            _ => false,
        },
        _ => false,
    }
}

/// Division with remainder by a monic divisor in the divisor's main variable:
/// returns (q, r) with f = q*g + r and deg r < deg g. Valid over any
/// commutative ring because g is monic.
pub fn divmod_by_monic(f: &Value, g: &Value, ring: &Ring) -> Result<(Value, Value)> {
    let var = match g {
        Value::P(p) => p.var,
        Value::S(_) => return Err(AlgebraError::NotMonic),
    };
    if !is_monic_in(g, var, ring) {
        return Err(AlgebraError::NotMonic);
    }
    let dg = g.degree_in(var);
    let mut r = f.clone();
    let mut q = Value::S(ring.zero());
    loop {
        if r.is_zero_rep() {
            break;
        }
        let dr = match &r {
            Value::P(p) if p.var == var => p.coeffs.len() - 1,
            v if v.max_var().map_or(true, |m| m < var) => 0,
            Value::P(_) => panic!("divmod_by_monic: value mentions a higher variable"),
            Value::S(_) => 0,
        };
        if dr < dg {
            break;
        }
        let lead = r.coeff_in(var, dr, ring);
        let term = lead.mul_var_pow(var, dr - dg, ring);
        q = q.add(&term);
        r = r.sub(&term.mul(g));
        debug_assert!(r.is_zero_rep() || r.degree_in(var) < dr);
    }
    Ok((q, r))
}

/// Remainder of division by a monic divisor.
pub fn reduce_by_monic(f: &Value, g: &Value, ring: &Ring) -> Result<Value> {
    Ok(divmod_by_monic(f, g, ring)?.1)
}

/// Fraction-free reduction used in localized branches: returns r with
/// r = c^k * f - q * g for some k and q, deg_var r < deg_var g, where c is
/// the leading coefficient of g. Over the localization at c, r generates the
/// same ideal contribution as f modulo g.
pub fn pseudo_reduce(f: &Value, g: &Value, var: VarIdx, ring: &Ring) -> Value {
    let dg = g.degree_in(var);
    assert!(dg >= 1, "pseudo_reduce needs a positive-degree divisor");
    let c = g.coeff_in(var, dg, ring);
    let mut r = f.clone();
    loop {
        if r.is_zero_rep() {
            break;
        }
        let dr = r.degree_in(var);
        if dr < dg {
            break;
        }
        let lead = r.coeff_in(var, dr, ring);
        // r <- c*r - lead * var^(dr-dg) * g
        r = c.mul(&r).sub(&lead.mul_var_pow(var, dr - dg, ring).mul(g));
        debug_assert!(r.is_zero_rep() || r.degree_in(var) < dr);
    }
    r
}

/// A generator list for an ideal of the ambient polynomial ring.
#[derive(Debug, Clone)]
pub struct GenList {
    pub amb: Ambient,
    pub gens: Vec<Value>,
}

impl GenList {
    pub fn new(amb: Ambient, gens: Vec<Value>) -> GenList {
        GenList { amb, gens }
    }

    /// Normalize w.r.t. the given main variable: drop zero generators, then
    /// repeatedly reduce any generator by any monic generator of positive
    /// degree no greater than its own, until stable.
    pub fn normalized_gens(&self, var: VarIdx) -> Vec<Value> {
        let ring = &self.amb.ring;
        let mut gens: Vec<Value> = self.gens.iter().filter(|g| !g.is_zero_rep()).cloned().collect();
        loop {
            let mut changed = false;
            'outer: for i in 0..gens.len() {
                for j in 0..gens.len() {
                    if i == j {
                        continue;
                    }
                    let dj = gens[j].degree_in(var);
                    if dj == 0 || !is_monic_in(&gens[j], var, ring) {
                        continue;
                    }
                    if gens[i].degree_in(var) >= dj {
                        let g = gens[j].clone();
                        let r = reduce_by_monic(&gens[i], &g, ring).expect("monic divisor");
                        gens[i] = r;
                        changed = true;
                        break 'outer;
                    }
                }
            }
            gens.retain(|g| !g.is_zero_rep());
            if !changed {
                return gens;
            }
        }
    }

    /// The list-based degree measure: sum of main-variable degrees of the
    /// normalized generator list. Zero iff every surviving generator has
    /// degree zero in the main variable.
    pub fn d_measure(&self, var: VarIdx) -> usize {
        self.normalized_gens(var).iter().map(|g| g.degree_in(var)).sum()
    }

    /// Sum of total degrees of the surviving generators; drives the global
    /// recursion-depth bound across variable levels.
    pub fn total_measure(&self) -> usize {
        self.gens.iter().filter(|g| !g.is_zero_rep()).map(|g| g.total_degree()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn q_amb() -> Ambient {
        Ambient::new(Ring::rational(), vec!["x".into()])
    }

    fn qp(coeffs: &[i64]) -> Value {
        let ring = Ring::rational();
        Value::poly(0, coeffs.iter().map(|&c| Value::S(ring.from_i64(c))).collect())
    }

    #[test]
    fn leading_data_basics() {
        let ring = Ring::rational();
        // x^2 + 1
        let f = qp(&[1, 0, 1]);
        let (d, lc) = leading_data(&f).unwrap();
        assert_eq!(d, 2);
        assert_eq!(lc, Value::S(ring.from_i64(1)));
        // constant 7 over Z
        let z = Ring::integers();
        let (d, lc) = leading_data(&Value::S(z.from_i64(7))).unwrap();
        assert_eq!(d, 0);
        assert_eq!(lc, Value::S(z.from_i64(7)));
        // zero errors
        assert!(leading_data(&Value::S(ring.zero())).is_err());
    }

    #[test]
    fn divmod_examples() {
        let ring = Ring::rational();
        // x^2 + 1 divided by x - 1 leaves 2
        let f = qp(&[1, 0, 1]);
        let g = qp(&[-1, 1]);
        let (qq, r) = divmod_by_monic(&f, &g, &ring).unwrap();
        assert_eq!(r, Value::S(ring.from_i64(2)));
        assert_eq!(qq.mul(&g).add(&r), f);
        // f = g leaves 0
        let (_, r) = divmod_by_monic(&g, &g, &ring).unwrap();
        assert!(r.is_zero_rep());
        // 2x^3 divided by x^2 leaves 0 (over Z)
        let z = Ring::integers();
        let f = Value::poly(0, vec![Value::S(z.zero()), Value::S(z.zero()), Value::S(z.zero()), Value::S(z.from_i64(2))]);
        let g = Value::poly(0, vec![Value::S(z.zero()), Value::S(z.zero()), Value::S(z.one())]);
        let (_, r) = divmod_by_monic(&f, &g, &z).unwrap();
        assert!(r.is_zero_rep());
    }

    #[test]
    fn non_monic_divisor_rejected() {
        let ring = Ring::rational();
        let f = qp(&[1, 0, 1]);
        let g = qp(&[1, 2]); // 2x + 1
        assert!(matches!(reduce_by_monic(&f, &g, &ring), Err(AlgebraError::NotMonic)));
    }

    #[test]
    fn d_measure_normalization() {
        // [x^2, x^2 + x] normalizes to [x]; measure 1
        let gl = GenList::new(q_amb(), vec![qp(&[0, 0, 1]), qp(&[0, 1, 1])]);
        assert_eq!(gl.d_measure(0), 1);
        let normalized = gl.normalized_gens(0);
        assert_eq!(normalized, vec![qp(&[0, 1])]);
        // [6] over Z: degree-zero generator, measure 0
        let z = Ring::integers();
        let gl = GenList::new(Ambient::new(z.clone(), vec!["x".into()]), vec![Value::S(z.from_i64(6))]);
        assert_eq!(gl.d_measure(0), 0);
    }

    #[test]
    fn pseudo_reduce_drops_degree() {
        let z = Ring::integers();
        // f = y^2, g = x*y - (x^2+1) pseudo-reduces in y... here single var: f = x^2+x, g = 2x+1
        let f = Value::poly(0, vec![Value::S(z.zero()), Value::S(z.one()), Value::S(z.one())]);
        let g = Value::poly(0, vec![Value::S(z.one()), Value::S(z.from_i64(2))]);
        let r = pseudo_reduce(&f, &g, 0, &z);
        assert_eq!(r.degree_in(0), 0);
    }

    #[test]
    fn value_arithmetic_multivar() {
        let ring = Ring::rational();
        let x = Value::var(0, &ring);
        let y = Value::var(1, &ring);
        let f = x.add(&y); // y + x
        let g = f.mul(&f); // y^2 + 2xy + x^2
        assert_eq!(g.degree_in(1), 2);
        assert_eq!(g.degree_in(0), 2);
        assert_eq!(g.coeff_in(1, 1, &ring), x.mul(&Value::S(ring.from_i64(2))));
        assert_eq!(g.total_degree(), 2);
    }
}
