//! Canonical text rendering: terms sorted descending by exponent, explicit
//! coefficients, whitespace around binary +/-. The CLI parser round-trips
//! these forms for every polynomial whose coefficients are free of fraction
//! bars.

use num_traits::Signed;

use crate::kpoly::{KFrac, KPoly, KScalar};
use crate::poly::Value;
use crate::ring::Elem;

/// A rendered fragment plus enough structure to embed it in a product.
#[derive(Debug, Clone)]
pub struct Fragment {
    pub text: String,
    /// False when the fragment contains top-level binary operators or a
    /// fraction bar and must be parenthesized inside a product.
    pub atomic: bool,
    /// True when the fragment is exactly "1" (droppable as a coefficient).
    pub is_one: bool,
    /// Set when the fragment is the negation of the contained positive form
    /// (sign extraction for "a - b" output).
    pub negated: Option<String>,
}

impl Fragment {
    fn plain(text: String, atomic: bool) -> Fragment {
        Fragment { is_one: text == "1", text, atomic, negated: None }
    }

    pub fn in_product(&self) -> String {
        if self.atomic {
            self.text.clone()
        } else {
            format!("({})", self.text)
        }
    }
}

fn rational_fragment(r: &num_rational::BigRational) -> Fragment {
    let render = |v: &num_rational::BigRational| {
        if v.denom().abs() == num_bigint::BigInt::from(1) {
            format!("{}", v.numer())
        } else {
            format!("{}/{}", v.numer(), v.denom())
        }
    };
    let text = render(r);
    let negated = if r.is_negative() { Some(render(&-r)) } else { None };
    Fragment { is_one: text == "1", text, atomic: true, negated }
}

fn kscalar_fragment(c: &KScalar) -> Fragment {
    match c {
        KScalar::Rat(r) => rational_fragment(r),
        KScalar::Fp(v) => Fragment::plain(format!("{v}"), true),
    }
}

/// Render a multivariate polynomial with the given variable names, terms in
/// descending lex order.
pub fn kpoly_fragment(p: &KPoly, names: &[String]) -> Fragment {
    if p.is_zero() {
        return Fragment::plain("0".to_string(), true);
    }
    let mut pieces: Vec<(bool, String)> = Vec::new(); // (negative, body)
    for (mono, coeff) in p.terms.iter().rev() {
        let cfrag = kscalar_fragment(coeff);
        let mono_str = {
            let mut parts = Vec::new();
            for (i, &e) in mono.iter().enumerate() {
                if e == 1 {
                    parts.push(names[i].clone());
                } else if e > 1 {
                    parts.push(format!("{}^{}", names[i], e));
                }
            }
            parts.join("*")
        };
        let (neg, cbody) = match &cfrag.negated {
            Some(abs) => (true, abs.clone()),
            None => (false, cfrag.text.clone()),
        };
        let body = if mono_str.is_empty() {
            cbody
        } else if cbody == "1" {
            mono_str
        } else {
            format!("{cbody}*{mono_str}")
        };
        pieces.push((neg, body));
    }
    join_terms(pieces)
}

fn join_terms(pieces: Vec<(bool, String)>) -> Fragment {
    let multi = pieces.len() > 1;
    let mut out = String::new();
    for (i, (neg, body)) in pieces.iter().enumerate() {
        if i == 0 {
            if *neg {
                out.push('-');
            }
            out.push_str(body);
        } else if *neg {
            out.push_str(" - ");
            out.push_str(body);
        } else {
            out.push_str(" + ");
            out.push_str(body);
        }
    }
    let negated = if !multi && pieces[0].0 { Some(pieces[0].1.clone()) } else { None };
    let atomic = !multi && !out.contains(' ');
    Fragment { is_one: out == "1", text: out, atomic, negated }
}

/// Render a fraction of multivariate polynomials.
pub fn kfrac_fragment(f: &KFrac, names: &[String]) -> Fragment {
    let num = kpoly_fragment(&f.num, names);
    if f.den.as_constant().map(|c| c == f.den.field.one()) == Some(true) {
        return num;
    }
    let den = kpoly_fragment(&f.den, names);
    let text = format!("{}/{}", num.in_product(), den.in_product());
    Fragment { is_one: false, text, atomic: false, negated: None }
}

pub fn elem_fragment(e: &Elem) -> Fragment {
    match e {
        Elem::Rat(r) | Elem::Int(r) => rational_fragment(r),
        Elem::Fp { val, .. } => Fragment::plain(format!("{val}"), true),
        Elem::Mod { val, .. } => Fragment::plain(format!("{val}"), true),
        Elem::Val { ring, frac } => {
            let names: Vec<String> = (0..ring.nvars).map(|i| ring.var_name(i)).collect();
            kfrac_fragment(frac, &names)
        }
    }
}

/// Render a nested polynomial value using ambient variable names.
pub fn value_fragment(v: &Value, vars: &[String]) -> Fragment {
    match v {
        Value::S(e) => elem_fragment(e),
        Value::P(p) => {
            let name = &vars[p.var];
            let mut pieces: Vec<(bool, String)> = Vec::new();
            for (k, coeff) in p.coeffs.iter().enumerate().rev() {
                if coeff.is_zero_rep() {
                    continue;
                }
                let cfrag = value_fragment(coeff, vars);
                let var_str = match k {
                    0 => String::new(),
                    1 => name.clone(),
                    _ => format!("{name}^{k}"),
                };
                let (neg, cbody, catomic) = match &cfrag.negated {
                    Some(abs) => (true, abs.clone(), true),
                    None => (false, cfrag.text.clone(), cfrag.atomic),
                };
                let body = if var_str.is_empty() {
                    if catomic {
                        cbody
                    } else {
                        format!("({cbody})")
                    }
                } else if cbody == "1" {
                    var_str
                } else if catomic {
                    format!("{cbody}*{var_str}")
                } else {
                    format!("({cbody})*{var_str}")
                };
                pieces.push((neg, body));
            }
            if pieces.is_empty() {
                return Fragment::plain("0".to_string(), true);
            }
            join_terms(pieces)
        }
    }
}

pub fn render_value(v: &Value, vars: &[String]) -> String {
    value_fragment(v, vars).text
}

pub fn render_elem(e: &Elem) -> String {
    elem_fragment(e).text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kpoly::SmallField;
    use crate::ring::Ring;

    #[test]
    fn renders_integer_polys() {
        let z = Ring::integers();
        let vars = vec!["x".to_string()];
        let f = Value::poly(0, vec![Value::S(z.from_i64(3)), Value::S(z.from_i64(2))]);
        assert_eq!(render_value(&f, &vars), "2*x + 3");
        let g = Value::poly(0, vec![Value::S(z.from_i64(-1)), Value::S(z.from_i64(1))]);
        assert_eq!(render_value(&g, &vars), "x - 1");
        let h = Value::poly(
            0,
            vec![Value::S(z.from_i64(1)), Value::S(z.zero()), Value::S(z.from_i64(-1))],
        );
        assert_eq!(render_value(&h, &vars), "-x^2 + 1");
    }

    #[test]
    fn renders_valuation_coefficients() {
        let v2 = Ring::valuation(2, SmallField::Rat).unwrap();
        let vars = vec!["x".to_string()];
        let t2 = v2.val_generator(1).unwrap();
        let f = Value::poly(0, vec![Value::S(v2.from_i64(-1)), Value::S(t2)]);
        assert_eq!(render_value(&f, &vars), "t2*x - 1");
        let s = v2.val_generator(0).unwrap().add(&v2.val_generator(1).unwrap());
        let g = Value::poly(0, vec![Value::S(v2.zero()), Value::S(s)]);
        assert_eq!(render_value(&g, &vars), "(t1 + t2)*x");
    }

    #[test]
    fn renders_nested_polys() {
        let q = Ring::rational();
        let vars = vec!["x".to_string(), "y".to_string()];
        let x = Value::var(0, &q);
        let y = Value::var(1, &q);
        let f = x.mul(&y);
        assert_eq!(render_value(&f, &vars), "x*y");
        let g = x.add(&Value::S(q.one())).mul(&y).add(&Value::S(q.from_i64(2)));
        assert_eq!(render_value(&g, &vars), "(x + 1)*y + 2");
    }
}
