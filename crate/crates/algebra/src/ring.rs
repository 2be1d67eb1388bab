//! Base-ring descriptors and exact elements.
//!
//! The engine only ever visits rings from a family closed under the
//! localizations and quotients its recursion performs: Q, F_p, Z with a set
//! of inverted primes, Z/n, the rank-r lex-valuation rings V inside
//! k(t_1..t_m), and quotients of those valuation rings by a principal ideal.
//! `localize` and `quotient_ring` return the normalized member of the family
//! rather than stacking formal wrappers, so equality stays decidable by
//! construction.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::error::{AlgebraError, Result};
use crate::kpoly::{KFrac, KPoly, SmallField, ValueVector};

/// Shape data of a lex-valuation ring: fractions f/g in k(t_1..t_nvars) whose
/// value (min-lex exponent of f minus that of g) has lex-nonnegative prefix of
/// length `rank`. rank == nvars is the full valuation domain V_n; localizing
/// lowers the rank; rank == 0 is the whole function field. `offset` records
/// how many chain variables were killed by quotients, purely for rendering
/// (the first live variable is t_{offset+1}).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ValRing {
    pub base: SmallField,
    pub nvars: usize,
    pub rank: usize,
    pub offset: usize,
}

impl ValRing {
    pub fn new(base: SmallField, rank: usize) -> Result<ValRing> {
        if rank < 1 {
            return Err(AlgebraError::capability("valuation domain needs rank >= 1"));
        }
        if let SmallField::Fp(p) = base {
            if !arith::is_prime_u64(p) {
                return Err(AlgebraError::capability(format!("{p} is not prime")));
            }
        }
        Ok(ValRing { base, nvars: rank, rank, offset: 0 })
    }

    pub fn is_field(&self) -> bool {
        self.rank == 0
    }

    /// Display name of the i-th live variable (0-based).
    pub fn var_name(&self, i: usize) -> String {
        format!("t{}", self.offset + i + 1)
    }

    pub fn contains(&self, f: &KFrac) -> bool {
        f.value().prefix_cmp_zero(self.rank) != std::cmp::Ordering::Less
    }
}

/// Descriptor of a supported base ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ring {
    /// The zero ring: the quotient by a unit ideal. No arithmetic is offered.
    Zero,
    /// The rational field Q.
    Rat,
    /// The prime field F_p.
    Fp(u64),
    /// Z localized at the multiplicative set generated by `inverted`
    /// (inverted == 1 means Z itself).
    Int { inverted: BigUint },
    /// Z/n for n >= 2, with the factorization of n fixed at construction.
    IntMod { n: BigUint, factors: Vec<(BigUint, u32)> },
    /// A lex-valuation ring (possibly localized to lower rank).
    Val(ValRing),
    /// V/(a) for a nonzero nonunit a of the valuation ring V.
    ValQuot { ring: ValRing, modulus: KFrac },
}

impl Ring {
    pub fn rational() -> Ring {
        Ring::Rat
    }

    pub fn prime_field(p: u64) -> Result<Ring> {
        if !arith::is_prime_u64(p) {
            return Err(AlgebraError::capability(format!("{p} is not prime")));
        }
        Ok(Ring::Fp(p))
    }

    pub fn integers() -> Ring {
        Ring::Int { inverted: BigUint::one() }
    }

    pub fn integers_mod(n: u64) -> Result<Ring> {
        if n < 2 {
            return Err(AlgebraError::capability("Z/n needs n >= 2"));
        }
        let nb = BigUint::from(n);
        let factors = arith::factor_biguint(&nb)?;
        Ok(Ring::IntMod { n: nb, factors })
    }

    pub fn valuation(rank: usize, base: SmallField) -> Result<Ring> {
        Ok(Ring::Val(ValRing::new(base, rank)?))
    }

    pub fn is_zero_ring(&self) -> bool {
        matches!(self, Ring::Zero)
    }

    pub fn is_field(&self) -> bool {
        match self {
            Ring::Rat | Ring::Fp(_) => true,
            Ring::Val(v) => v.is_field(),
            _ => false,
        }
    }

    pub fn is_domain(&self) -> bool {
        matches!(self, Ring::Rat | Ring::Fp(_) | Ring::Int { .. } | Ring::Val(_))
    }

    pub fn zero(&self) -> Elem {
        match self {
            Ring::Zero => panic!("no arithmetic on the zero ring"),
            Ring::Rat => Elem::Rat(BigRational::zero()),
            Ring::Fp(p) => Elem::Fp { p: *p, val: 0 },
            Ring::Int { .. } => Elem::Int(BigRational::zero()),
            Ring::IntMod { n, .. } => Elem::Mod { n: n.clone(), val: BigUint::zero() },
            Ring::Val(v) => Elem::Val { ring: v.clone(), frac: KFrac::zero(v.base, v.nvars) },
            Ring::ValQuot { ring, .. } => {
                Elem::Val { ring: ring.clone(), frac: KFrac::zero(ring.base, ring.nvars) }
            }
        }
    }

    pub fn one(&self) -> Elem {
        match self {
            Ring::Zero => panic!("no arithmetic on the zero ring"),
            Ring::Rat => Elem::Rat(BigRational::one()),
            Ring::Fp(_) => self.from_i64(1),
            Ring::Int { .. } => Elem::Int(BigRational::one()),
            Ring::IntMod { n, .. } => Elem::Mod { n: n.clone(), val: BigUint::one() % n },
            Ring::Val(v) => Elem::Val { ring: v.clone(), frac: KFrac::one(v.base, v.nvars) },
            Ring::ValQuot { ring, .. } => {
                Elem::Val { ring: ring.clone(), frac: KFrac::one(ring.base, ring.nvars) }
            }
        }
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        match self {
            Ring::Zero => panic!("no arithmetic on the zero ring"),
            Ring::Rat => Elem::Rat(BigRational::from(BigInt::from(v))),
            Ring::Fp(p) => Elem::Fp { p: *p, val: v.rem_euclid(*p as i64) as u64 },
            Ring::Int { .. } => Elem::Int(BigRational::from(BigInt::from(v))),
            Ring::IntMod { n, .. } => {
                let m = BigInt::from(v).mod_floor(&BigInt::from_biguint(num_bigint::Sign::Plus, n.clone()));
                Elem::Mod { n: n.clone(), val: m.to_biguint().unwrap() }
            }
            Ring::Val(vr) => {
                let c = vr.base.from_i64(v);
                Elem::Val {
                    ring: vr.clone(),
                    frac: KFrac::from_poly(KPoly::constant(vr.base, vr.nvars, c)),
                }
            }
            Ring::ValQuot { ring, .. } => {
                let c = ring.base.from_i64(v);
                Elem::Val {
                    ring: ring.clone(),
                    frac: KFrac::from_poly(KPoly::constant(ring.base, ring.nvars, c)),
                }
            }
        }
    }

    /// Build an element from a rational literal; errors when the denominator
    /// is not invertible in this ring.
    pub fn from_rational(&self, r: &BigRational) -> Result<Elem> {
        match self {
            Ring::Zero => Err(AlgebraError::capability("no arithmetic on the zero ring")),
            Ring::Rat => Ok(Elem::Rat(r.clone())),
            Ring::Fp(p) => {
                let field = SmallField::Fp(*p);
                match field.from_rational(r)? {
                    crate::kpoly::KScalar::Fp(v) => Ok(Elem::Fp { p: *p, val: v }),
                    _ => unreachable!(),
                }
            }
            Ring::Int { inverted } => {
                let den = r.denom().to_biguint().expect("positive denominator");
                if !den.is_one() && !arith::divides_power(&den, inverted) {
                    return Err(AlgebraError::RingMismatch(format!(
                        "{r} does not lie in this localization of Z"
                    )));
                }
                Ok(Elem::Int(r.clone()))
            }
            Ring::IntMod { n, .. } => {
                let nb = BigInt::from_biguint(num_bigint::Sign::Plus, n.clone());
                let num = r.numer().mod_floor(&nb).to_biguint().unwrap();
                let den = r.denom().mod_floor(&nb).to_biguint().unwrap();
                let den_inv = mod_inverse_big(&den, n).ok_or_else(|| {
                    AlgebraError::RingMismatch(format!("denominator of {r} not invertible mod {n}"))
                })?;
                Ok(Elem::Mod { n: n.clone(), val: (num * den_inv) % n })
            }
            Ring::Val(vr) => {
                let c = vr.base.from_rational(r)?;
                Ok(Elem::Val {
                    ring: vr.clone(),
                    frac: KFrac::from_poly(KPoly::constant(vr.base, vr.nvars, c)),
                })
            }
            Ring::ValQuot { ring, .. } => {
                let c = ring.base.from_rational(r)?;
                Ok(Elem::Val {
                    ring: ring.clone(),
                    frac: KFrac::from_poly(KPoly::constant(ring.base, ring.nvars, c)),
                })
            }
        }
    }

    /// The i-th valuation generator t_{i+1} (0-based index into live variables).
    pub fn val_generator(&self, i: usize) -> Result<Elem> {
        let vr = match self {
            Ring::Val(v) => v,
            Ring::ValQuot { ring, .. } => ring,
            _ => return Err(AlgebraError::capability("t-generators exist only in valuation rings")),
        };
        if i >= vr.nvars {
            return Err(AlgebraError::RankExhausted { needed: i + 1, rank: vr.nvars });
        }
        Ok(Elem::Val { ring: vr.clone(), frac: KFrac::from_poly(KPoly::var(vr.base, vr.nvars, i)) })
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Zero => write!(f, "0-ring"),
            Ring::Rat => write!(f, "Q"),
            Ring::Fp(p) => write!(f, "F{p}"),
            Ring::Int { inverted } => {
                if inverted.is_one() {
                    write!(f, "Z")
                } else {
                    write!(f, "Z[1/{inverted}]")
                }
            }
            Ring::IntMod { n, .. } => write!(f, "Z/{n}"),
            Ring::Val(v) => {
                if v.is_field() {
                    write!(f, "{}(", v.base)?;
                    for i in 0..v.nvars {
                        if i > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{}", v.var_name(i))?;
                    }
                    write!(f, ")")
                } else if v.rank == v.nvars && v.offset == 0 {
                    write!(f, "V{}({})", v.rank, v.base)
                } else {
                    write!(
                        f,
                        "V[vars t{}..t{}; rank {}]({})",
                        v.offset + 1,
                        v.offset + v.nvars,
                        v.rank,
                        v.base
                    )
                }
            }
            Ring::ValQuot { ring, modulus } => {
                write!(f, "({})/(a)", Ring::Val(ring.clone()))?;
                let _ = modulus;
                Ok(())
            }
        }
    }
}

macro_rules! unreachable_mismatch {
    () => {
        panic!("elements from different rings combined")
    };
}

/// An exact element of a supported base ring, tagged with enough ring data to
/// operate on it. Quotient-ring elements are carried by canonical
/// representatives; equality consults the modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Elem {
    Rat(BigRational),
    Fp { p: u64, val: u64 },
    /// Element of Z or a localization Z[1/s]: a rational whose denominator
    /// divides a power of s.
    Int(BigRational),
    Mod { n: BigUint, val: BigUint },
    Val { ring: ValRing, frac: KFrac },
}

impl Elem {
    pub fn add(&self, other: &Elem) -> Elem {
        match (self, other) {
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a + b),
            (Elem::Fp { p, val: a }, Elem::Fp { p: q, val: b }) if p == q => {
                Elem::Fp { p: *p, val: (a + b) % p }
            }
            (Elem::Int(a), Elem::Int(b)) => Elem::Int(a + b),
            (Elem::Mod { n, val: a }, Elem::Mod { n: m, val: b }) if n == m => {
                Elem::Mod { n: n.clone(), val: (a + b) % n }
            }
            (Elem::Val { ring, frac: a }, Elem::Val { ring: r2, frac: b }) if ring == r2 => {
                Elem::Val { ring: ring.clone(), frac: a.add(b) }
            }
            _ => unreachable_mismatch!(),
        }
    }

    pub fn neg(&self) -> Elem {
        match self {
            Elem::Rat(a) => Elem::Rat(-a),
            Elem::Fp { p, val } => Elem::Fp { p: *p, val: if *val == 0 { 0 } else { p - val } },
            Elem::Int(a) => Elem::Int(-a),
            Elem::Mod { n, val } => Elem::Mod {
                n: n.clone(),
                val: if val.is_zero() { BigUint::zero() } else { n - val },
            },
            Elem::Val { ring, frac } => Elem::Val { ring: ring.clone(), frac: frac.neg() },
        }
    }

    pub fn sub(&self, other: &Elem) -> Elem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Elem) -> Elem {
        match (self, other) {
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a * b),
            (Elem::Fp { p, val: a }, Elem::Fp { p: q, val: b }) if p == q => {
                Elem::Fp { p: *p, val: arith::mul_mod_u64(*a, *b, *p) }
            }
            (Elem::Int(a), Elem::Int(b)) => Elem::Int(a * b),
            (Elem::Mod { n, val: a }, Elem::Mod { n: m, val: b }) if n == m => {
                Elem::Mod { n: n.clone(), val: (a * b) % n }
            }
            (Elem::Val { ring, frac: a }, Elem::Val { ring: r2, frac: b }) if ring == r2 => {
                Elem::Val { ring: ring.clone(), frac: a.mul(b) }
            }
            _ => unreachable_mismatch!(),
        }
    }

    /// Syntactic zero test of the representative; for quotient rings use
    /// [`Ring::elem_is_zero`], which consults the modulus.
    pub fn rep_is_zero(&self) -> bool {
        match self {
            Elem::Rat(a) => a.is_zero(),
            Elem::Fp { val, .. } => *val == 0,
            Elem::Int(a) => a.is_zero(),
            Elem::Mod { val, .. } => val.is_zero(),
            Elem::Val { frac, .. } => frac.is_zero(),
        }
    }

    pub fn as_val(&self) -> Option<&KFrac> {
        match self {
            Elem::Val { frac, .. } => Some(frac),
            _ => None,
        }
    }

    pub fn pow(&self, ring: &Ring, mut e: u32) -> Elem {
        let mut acc = ring.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

fn mod_inverse_big(a: &BigUint, n: &BigUint) -> Option<BigUint> {
    let a = BigInt::from_biguint(num_bigint::Sign::Plus, a.clone());
    let n = BigInt::from_biguint(num_bigint::Sign::Plus, n.clone());
    let e = a.extended_gcd(&n);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(&n).to_biguint().unwrap())
}

/// A prime ideal of a supported base ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasePrime {
    /// The zero ideal of a domain.
    Zero,
    /// A principal prime (q) of Z, a localization of Z, or Z/n.
    Principal(BigUint),
    /// The chain prime P_j of a valuation ring, j >= 1; membership is
    /// "the first j coordinates of the value are not all zero".
    Chain(usize),
}

impl BasePrime {
    /// Containment among base primes of one ring: chain indices compare by
    /// <=, distinct principal primes are incomparable, Zero is below all.
    pub fn contains(&self, other: &BasePrime) -> bool {
        match (self, other) {
            (_, BasePrime::Zero) => true,
            (BasePrime::Zero, _) => false,
            (BasePrime::Principal(a), BasePrime::Principal(b)) => a == b,
            (BasePrime::Chain(a), BasePrime::Chain(b)) => b <= a,
            _ => false,
        }
    }

    pub fn render(&self) -> String {
        match self {
            BasePrime::Zero => "0".to_string(),
            BasePrime::Principal(q) => format!("{q}"),
            BasePrime::Chain(j) => format!("P_{j}"),
        }
    }
}

impl Ring {
    /// Zero test honoring quotient moduli.
    pub fn elem_is_zero(&self, a: &Elem) -> bool {
        match self {
            Ring::ValQuot { ring, modulus } => {
                let f = a.as_val().expect("valuation element");
                if f.is_zero() {
                    return true;
                }
                // a = 0 mod (m) iff a/m lies in the rank-r ring
                let q = f.div(modulus).expect("nonzero modulus");
                ring.contains(&q)
            }
            _ => a.rep_is_zero(),
        }
    }

    pub fn elem_eq(&self, a: &Elem, b: &Elem) -> bool {
        match self {
            Ring::ValQuot { .. } => self.elem_is_zero(&a.sub(b)),
            _ => a == b,
        }
    }

    /// Unit test for each supported shape.
    pub fn is_unit(&self, a: &Elem) -> bool {
        if self.elem_is_zero(a) {
            return false;
        }
        match (self, a) {
            (Ring::Zero, _) => false,
            (Ring::Rat, _) | (Ring::Fp(_), _) => true,
            (Ring::Int { inverted }, Elem::Int(v)) => {
                let num = v.numer().abs().to_biguint().unwrap();
                arith::divides_power(&num, inverted)
            }
            (Ring::IntMod { n, .. }, Elem::Mod { val, .. }) => val.gcd(n).is_one(),
            (Ring::Val(vr), Elem::Val { frac, .. }) => {
                frac.value().prefix_cmp_zero(vr.rank) == std::cmp::Ordering::Equal
            }
            (Ring::ValQuot { ring, .. }, Elem::Val { frac, .. }) => {
                // units of V/(a) are images of units of V
                frac.value().prefix_cmp_zero(ring.rank) == std::cmp::Ordering::Equal
            }
            _ => unreachable_mismatch!(),
        }
    }

    /// Inverse of a unit; errors otherwise.
    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if !self.is_unit(a) {
            return Err(AlgebraError::ZeroElement("inverse of a nonunit".into()));
        }
        Ok(match (self, a) {
            (Ring::Rat, Elem::Rat(v)) => Elem::Rat(v.recip()),
            (Ring::Fp(p), Elem::Fp { val, .. }) => {
                Elem::Fp { p: *p, val: arith::inv_mod_u64(*val, *p).expect("unit") }
            }
            (Ring::Int { .. }, Elem::Int(v)) => Elem::Int(v.recip()),
            (Ring::IntMod { n, .. }, Elem::Mod { val, .. }) => {
                Elem::Mod { n: n.clone(), val: mod_inverse_big(val, n).expect("unit") }
            }
            (Ring::Val(vr), Elem::Val { frac, .. }) => {
                Elem::Val { ring: vr.clone(), frac: frac.inv()? }
            }
            (Ring::ValQuot { ring, .. }, Elem::Val { frac, .. }) => {
                Elem::Val { ring: ring.clone(), frac: frac.inv()? }
            }
            _ => unreachable_mismatch!(),
        })
    }

    /// Membership of an element in a base prime of this ring.
    pub fn in_prime(&self, a: &Elem, p: &BasePrime) -> bool {
        if self.elem_is_zero(a) {
            return true;
        }
        match (p, a) {
            (BasePrime::Zero, _) => false,
            (BasePrime::Principal(q), Elem::Int(v)) => {
                let qb = BigInt::from_biguint(num_bigint::Sign::Plus, q.clone());
                (v.numer() % qb).is_zero()
            }
            (BasePrime::Principal(q), Elem::Mod { val, .. }) => (val % q).is_zero(),
            (BasePrime::Chain(j), Elem::Val { frac, .. }) => !frac.value().prefix_is_zero(*j),
            _ => false,
        }
    }

    /// The value of a valuation-ring element, checking membership.
    pub fn value_of(&self, a: &Elem) -> Result<ValueVector> {
        let vr = match self {
            Ring::Val(v) => v,
            Ring::ValQuot { ring, .. } => ring,
            _ => return Err(AlgebraError::capability("value_of requires a valuation ring")),
        };
        let frac = a.as_val().ok_or_else(|| AlgebraError::RingMismatch("not a valuation element".into()))?;
        let v = frac.value();
        if v.prefix_cmp_zero(vr.rank) == std::cmp::Ordering::Less {
            return Err(AlgebraError::NotAMember(format!("{v}")));
        }
        Ok(v)
    }

    /// The smallest chain prime containing a nonzero nonunit of a valuation ring.
    pub fn smallest_prime_containing(&self, a: &Elem) -> Result<BasePrime> {
        let vr = match self {
            Ring::Val(v) => v,
            _ => return Err(AlgebraError::capability("chain primes require a valuation ring")),
        };
        let frac = a.as_val().ok_or_else(|| AlgebraError::RingMismatch("not a valuation element".into()))?;
        if frac.is_zero() {
            return Err(AlgebraError::ZeroElement(
                "the zero element lies in every prime; callers must special-case 0".into(),
            ));
        }
        let v = self.value_of(a)?;
        for j in 1..=vr.rank {
            if !v.prefix_is_zero(j) {
                return Ok(BasePrime::Chain(j));
            }
        }
        Err(AlgebraError::NoPrimeContains)
    }

    /// Minimal primes of this ring over the ideal generated by `gens`
    /// (degree-zero data). Returns a finite, pairwise incomparable set.
    pub fn min_primes_base(&self, gens: &[Elem]) -> Result<Vec<BasePrime>> {
        match self {
            Ring::Zero => Ok(vec![]),
            Ring::Rat | Ring::Fp(_) => {
                if gens.iter().any(|g| !self.elem_is_zero(g)) {
                    Ok(vec![])
                } else {
                    Ok(vec![BasePrime::Zero])
                }
            }
            Ring::Val(vr) if vr.is_field() => {
                if gens.iter().any(|g| !self.elem_is_zero(g)) {
                    Ok(vec![])
                } else {
                    Ok(vec![BasePrime::Zero])
                }
            }
            Ring::Int { inverted } => {
                let nums: Vec<BigInt> = gens
                    .iter()
                    .map(|g| match g {
                        Elem::Int(v) => Ok(v.numer().clone()),
                        _ => Err(AlgebraError::RingMismatch("expected an integer element".into())),
                    })
                    .collect::<Result<_>>()?;
                let g = arith::gcd_all(&nums);
                if g.is_zero() {
                    return Ok(vec![BasePrime::Zero]);
                }
                let stripped = arith::strip_shared_factors(&g, inverted);
                if stripped.is_one() {
                    return Ok(vec![]);
                }
                let factors = arith::factor_biguint(&stripped)?;
                Ok(factors.into_iter().map(|(q, _)| BasePrime::Principal(q)).collect())
            }
            Ring::IntMod { n, factors } => {
                let mut g = n.clone();
                for e in gens {
                    match e {
                        Elem::Mod { val, .. } => g = g.gcd(val),
                        _ => return Err(AlgebraError::RingMismatch("expected a residue element".into())),
                    }
                }
                Ok(factors
                    .iter()
                    .filter(|(q, _)| (&g % q).is_zero())
                    .map(|(q, _)| BasePrime::Principal(q.clone()))
                    .collect())
            }
            Ring::Val(_) => {
                let min = self.min_value_generator(gens, None)?;
                match min {
                    None => Ok(vec![BasePrime::Chain(0)]),
                    Some(a) => {
                        if self.is_unit(&a) {
                            Ok(vec![])
                        } else {
                            Ok(vec![self.smallest_prime_containing(&a)?])
                        }
                    }
                }
            }
            Ring::ValQuot { ring, modulus } => {
                // primes over (gens) + (modulus) in the underlying ring
                let m = Elem::Val { ring: ring.clone(), frac: modulus.clone() };
                let base = Ring::Val(ring.clone());
                let min = base.min_value_generator(gens, Some(&m))?;
                match min {
                    None => unreachable!("modulus is nonzero"),
                    Some(a) => {
                        if base.is_unit(&a) {
                            Ok(vec![])
                        } else {
                            Ok(vec![base.smallest_prime_containing(&a)?])
                        }
                    }
                }
            }
        }
    }

    /// The generator of minimal value among nonzero gens (+ an optional extra),
    /// or None if all are zero. Only the first `rank` coordinates matter for
    /// the generated ideal.
    fn min_value_generator(&self, gens: &[Elem], extra: Option<&Elem>) -> Result<Option<Elem>> {
        let vr = match self {
            Ring::Val(v) => v,
            _ => unreachable!(),
        };
        let mut best: Option<(Vec<i64>, Elem)> = None;
        let all = gens.iter().chain(extra);
        for g in all {
            let frac = g.as_val().ok_or_else(|| AlgebraError::RingMismatch("not a valuation element".into()))?;
            if frac.is_zero() {
                continue;
            }
            let v = self.value_of(g)?;
            let key: Vec<i64> = v.coords().expect("finite value")[..vr.rank].to_vec();
            match &best {
                None => best = Some((key, g.clone())),
                Some((bk, _)) if key < *bk => best = Some((key, g.clone())),
                _ => {}
            }
        }
        Ok(best.map(|(_, g)| g))
    }

    /// Localize this ring at c, returning the normalized descriptor in which
    /// c is a unit.
    pub fn localize(&self, c: &Elem) -> Result<Ring> {
        if self.is_zero_ring() {
            return Err(AlgebraError::capability("cannot localize the zero ring"));
        }
        if self.elem_is_zero(c) {
            return Err(AlgebraError::DegenerateLocalization);
        }
        match (self, c) {
            (Ring::Rat, _) | (Ring::Fp(_), _) => Ok(self.clone()),
            (Ring::Val(vr), _) if vr.is_field() => Ok(self.clone()),
            (Ring::Int { inverted }, Elem::Int(v)) => {
                let num = v.numer().abs().to_biguint().unwrap();
                Ok(Ring::Int { inverted: inverted * num })
            }
            (Ring::IntMod { n: _, factors }, Elem::Mod { val, .. }) => {
                // keep the prime powers of n whose prime does not divide c
                let mut kept = BigUint::one();
                let mut kept_factors = Vec::new();
                for (q, e) in factors {
                    if !(val % q).is_zero() {
                        kept *= q.pow(*e);
                        kept_factors.push((q.clone(), *e));
                    }
                }
                if kept.is_one() {
                    Ok(Ring::Zero)
                } else {
                    Ok(Ring::IntMod { n: kept, factors: kept_factors })
                }
            }
            (Ring::Val(vr), Elem::Val { frac, .. }) => {
                let v = self.value_of(c)?;
                // c is a unit iff its rank-prefix is zero; otherwise the
                // localization is the valuation ring of the shorter prefix
                let mut j = vr.rank;
                for i in 1..=vr.rank {
                    if !v.prefix_is_zero(i) {
                        j = i;
                        break;
                    }
                }
                if v.prefix_is_zero(vr.rank) {
                    return Ok(self.clone());
                }
                let _ = frac;
                Ok(Ring::Val(ValRing { base: vr.base, nvars: vr.nvars, rank: j - 1, offset: vr.offset }))
            }
            (Ring::ValQuot { .. }, _) => Err(AlgebraError::capability(
                "localization of a valuation-ring quotient is not a supported shape",
            )),
            _ => unreachable_mismatch!(),
        }
    }

    /// Quotient by the ideal generated by `gens`, returning the normalized
    /// descriptor (or the zero-ring marker for the unit ideal).
    pub fn quotient_ring(&self, gens: &[Elem]) -> Result<Ring> {
        if self.is_zero_ring() {
            return Ok(Ring::Zero);
        }
        if gens.iter().any(|g| self.is_unit(g)) {
            return Ok(Ring::Zero);
        }
        match self {
            Ring::Rat | Ring::Fp(_) => Ok(self.clone()), // all gens are 0
            Ring::Val(vr) if vr.is_field() => Ok(self.clone()),
            Ring::Int { inverted } => {
                let nums: Vec<BigInt> = gens
                    .iter()
                    .map(|g| match g {
                        Elem::Int(v) => Ok(v.numer().clone()),
                        _ => Err(AlgebraError::RingMismatch("expected an integer element".into())),
                    })
                    .collect::<Result<_>>()?;
                let g = arith::gcd_all(&nums);
                if g.is_zero() {
                    return Ok(self.clone());
                }
                let stripped = arith::strip_shared_factors(&g, inverted);
                if stripped.is_one() {
                    return Ok(Ring::Zero);
                }
                let factors = arith::factor_biguint(&stripped)?;
                Ok(Ring::IntMod { n: stripped, factors })
            }
            Ring::IntMod { n, .. } => {
                let mut g = n.clone();
                for e in gens {
                    match e {
                        Elem::Mod { val, .. } => g = g.gcd(val),
                        _ => return Err(AlgebraError::RingMismatch("expected a residue element".into())),
                    }
                }
                if g == *n {
                    return Ok(self.clone());
                }
                if g.is_one() {
                    return Ok(Ring::Zero);
                }
                let factors = arith::factor_biguint(&g)?;
                Ok(Ring::IntMod { n: g, factors })
            }
            Ring::Val(vr) => {
                let min = self.min_value_generator(gens, None)?;
                match min {
                    None => Ok(self.clone()),
                    Some(a) => {
                        // a is a nonzero nonunit here (units handled above)
                        Ok(Ring::ValQuot {
                            ring: vr.clone(),
                            modulus: a.as_val().unwrap().clone(),
                        })
                    }
                }
            }
            Ring::ValQuot { ring, modulus } => {
                let base = Ring::Val(ring.clone());
                let m = Elem::Val { ring: ring.clone(), frac: modulus.clone() };
                let min = base.min_value_generator(gens, Some(&m))?;
                match min {
                    None => unreachable!("modulus is nonzero"),
                    Some(a) => Ok(Ring::ValQuot {
                        ring: ring.clone(),
                        modulus: a.as_val().unwrap().clone(),
                    }),
                }
            }
            Ring::Zero => Ok(Ring::Zero),
        }
    }

    /// Minimal primes of the ring itself (the zero ideal).
    pub fn own_min_primes(&self) -> Result<Vec<BasePrime>> {
        self.min_primes_base(&[])
    }
}
