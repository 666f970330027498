//! Bivariate gcd and squarefree decomposition in `Q[x][y]`, via primitive
//! pseudo-remainder sequences in `y`.

use crate::poly::Polynomial;
use crate::rational::Q;
use crate::upoly::UPoly;
use num_traits::{One, Zero};

/// Coefficients in `y` (index = power of `y`), each a polynomial in `x`.
type YPoly = Vec<UPoly>;

fn trim(mut p: YPoly) -> YPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn to_y(p: &Polynomial) -> YPoly {
    assert_eq!(p.nvars(), 2);
    let mut out: YPoly = Vec::new();
    for (m, c) in p.terms() {
        let (i, j) = (m.0[0] as usize, m.0[1] as usize);
        if out.len() <= j {
            out.resize(j + 1, UPoly::zero());
        }
        out[j] = &out[j] + &UPoly::monomial(c.clone(), i);
    }
    trim(out)
}

fn from_y(p: &YPoly, vars: &[String]) -> Polynomial {
    let mut out = Polynomial::zero_owned(vars.to_vec());
    for (j, cx) in p.iter().enumerate() {
        for (i, c) in cx.coeffs().iter().enumerate() {
            out.add_term(vec![i as u32, j as u32], c.clone());
        }
    }
    out
}

fn content(p: &YPoly) -> UPoly {
    p.iter().fold(UPoly::zero(), |g, c| g.gcd(c))
}

fn primitive(p: &YPoly) -> YPoly {
    if p.is_empty() {
        return Vec::new();
    }
    let c = content(p);
    p.iter().map(|a| a.div_exact(&c)).collect()
}

fn prem(a: &YPoly, b: &YPoly) -> YPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        // r <- lb * r - lr * y^(dr-db) * b
        let shift = dr - db;
        let mut next: YPoly = r.iter().map(|c| c * &lb).collect();
        for (k, bc) in b.iter().enumerate() {
            next[k + shift] = &next[k + shift] - &(&lr * bc);
        }
        r = trim(next);
    }
    r
}

fn ygcd(a: &YPoly, b: &YPoly) -> YPoly {
    if a.is_empty() {
        return normalize(b.clone());
    }
    if b.is_empty() {
        return normalize(a.clone());
    }
    let c = content(a).gcd(&content(b));
    let (mut a, mut b) = (primitive(a), primitive(b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            // nonzero and free of y: primitive part is a unit
            a = vec![UPoly::one()];
            break;
        }
        let r = prem(&a, &b);
        a = b;
        b = primitive(&r);
    }
    normalize(a.iter().map(|x| x * &c).collect())
}

/// Scales so the leading `x`-coefficient of the leading `y`-coefficient is 1.
fn normalize(p: YPoly) -> YPoly {
    let p = trim(p);
    let Some(l) = p.last() else { return p };
    let s = Q::one() / l.lc();
    p.iter().map(|c| c.scale(&s)).collect()
}

fn y_derivative(p: &YPoly) -> YPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| c.scale(&Q::from_integer((j as i64).into())))
            .collect(),
    )
}

/// Exact division in `Q[x][y]`; `None` if not divisible.
fn ydiv(a: &YPoly, b: &YPoly) -> Option<YPoly> {
    let mut r = a.clone();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut q = vec![UPoly::zero(); r.len() - db];
    let lb = &b[db];
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let (qc, rem) = r[dr].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = dr - db;
        for (k, bc) in b.iter().enumerate() {
            r[k + shift] = &r[k + shift] - &(&qc * bc);
        }
        q[shift] = qc;
        r = trim(r);
    }
    if r.is_empty() {
        Some(trim(q))
    } else {
        None
    }
}

/// Gcd in `Q[x, y]`, normalized with a monic leading coefficient.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    from_y(&ygcd(&to_y(a), &to_y(b)), a.vars())
}

/// Exact quotient `a / b`, if `b` divides `a`.
pub fn div_exact(a: &Polynomial, b: &Polynomial) -> Option<Polynomial> {
    ydiv(&to_y(a), &to_y(b)).map(|q| from_y(&q, a.vars()))
}

/// Squarefree decomposition `f = c * prod g_k^k` with the `g_k` squarefree,
/// pairwise coprime and nonconstant. Returned sorted by multiplicity.
pub fn squarefree_decomposition(f: &Polynomial) -> Vec<(u32, Polynomial)> {
    let vars = f.vars().to_vec();
    let p = to_y(f);
    if p.is_empty() {
        return Vec::new();
    }
    let cont = content(&p);
    let pp = primitive(&p);
    let mut groups: Vec<(u32, YPoly)> = Vec::new();
    let mut push = |k: u32, g: YPoly| {
        if let Some(e) = groups.iter_mut().find(|(m, _)| *m == k) {
            let prod = ymul(&e.1, &g);
            e.1 = prod;
        } else {
            groups.push((k, g));
        }
    };
    for (k, g) in cont.squarefree_decomposition() {
        push(k, vec![g]);
    }
    if pp.len() > 1 {
        let d1 = y_derivative(&pp);
        let a = ygcd(&pp, &d1);
        let mut b = ydiv(&pp, &a).expect("gcd divides");
        let c = ydiv(&d1, &a).expect("gcd divides derivative");
        let mut d = ysub(&c, &y_derivative(&b));
        let mut i = 1;
        while b.len() > 1 {
            let g = ygcd(&b, &d);
            b = ydiv(&b, &g).expect("gcd divides");
            let c = ydiv(&d, &g).expect("gcd divides");
            if g.len() > 1 {
                push(i, g);
            }
            d = ysub(&c, &y_derivative(&b));
            i += 1;
        }
    }
    groups.sort_by_key(|(k, _)| *k);
    groups
        .into_iter()
        .map(|(k, g)| (k, from_y(&normalize(g), &vars)))
        .collect()
}

fn ymul(a: &YPoly, b: &YPoly) -> YPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![UPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(out)
}

fn ysub(a: &YPoly, b: &YPoly) -> YPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|k| {
                let z = UPoly::zero();
                &*a.get(k).unwrap_or(&z) - b.get(k).unwrap_or(&z)
            })
            .collect(),
    )
}

/// True iff `f` has no repeated factor.
pub fn is_squarefree(f: &Polynomial) -> bool {
    squarefree_decomposition(f).iter().all(|(k, _)| *k == 1)
}

/// Leading coefficient used by [`squarefree_decomposition`] so that
/// `f = c * prod g_k^k` holds exactly.
pub fn decomposition_constant(f: &Polynomial, parts: &[(u32, Polynomial)]) -> Q {
    let mut prod = Polynomial::constant_in(f.vars(), Q::one());
    for (k, g) in parts {
        prod = &prod * &g.pow(*k);
    }
    let (m, c) = prod.terms().next_back().expect("nonzero product");
    let m = m.0.clone();
    let c = c.clone();
    let fc = f.coeff(&m);
    if c.is_zero() {
        Q::zero()
    } else {
        fc / c
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_germ;

    #[test]
    fn gcd_of_partials() {
        let f = parse_germ("x^2*y").unwrap();
        let g = gcd(&f.derivative(0), &f.derivative(1));
        assert_eq!(g, parse_germ("x").unwrap());
        let f = parse_germ("y^2 - x^3").unwrap();
        let g = gcd(&f.derivative(0), &f.derivative(1));
        assert_eq!(g.total_degree(), Some(0));
    }

    #[test]
    fn gcd_nontrivial_mixed() {
        let a = parse_germ("(x - y)*(x + 2*y^2)*(x^2+1)").unwrap();
        let b = parse_germ("(x - y)*(x^2+1)*(y - 3)").unwrap();
        let g = gcd(&a, &b);
        let expect = parse_germ("(x - y)*(x^2 + 1)").unwrap();
        // equal up to a rational scalar
        let q = div_exact(&g, &expect).unwrap();
        assert_eq!(q.total_degree(), Some(0));
    }

    #[test]
    fn squarefree_parts_of_monomial_germs() {
        let f = parse_germ("x^2*y").unwrap();
        let d = squarefree_decomposition(&f);
        assert_eq!(d, vec![(1, parse_germ("y").unwrap()), (2, parse_germ("x").unwrap())]);
        let f = parse_germ("x^2*y^3").unwrap();
        let d = squarefree_decomposition(&f);
        assert_eq!(d.len(), 2);
        assert_eq!(d[0], (2, parse_germ("x").unwrap()));
        assert_eq!(d[1], (3, parse_germ("y").unwrap()));
        let f = parse_germ("x*y").unwrap();
        assert_eq!(squarefree_decomposition(&f), vec![(1, parse_germ("x*y").unwrap())]);
    }

    #[test]
    fn decomposition_recomposes() {
        for s in ["3*(x-y)^2*(x+y)", "-2*x^3*(y^2 - x^3)", "(x^2+y^2)^2*y", "x*(x-y)^2"] {
            let f = parse_germ(s).unwrap();
            let d = squarefree_decomposition(&f);
            let c = decomposition_constant(&f, &d);
            let mut prod = Polynomial::constant_in(f.vars(), c);
            for (k, g) in &d {
                prod = &prod * &g.pow(*k);
            }
            assert_eq!(prod, f, "{s}");
        }
        assert!(!is_squarefree(&parse_germ("x*(x-y)^2").unwrap()));
        assert!(is_squarefree(&parse_germ("x*(x-y)*(x-2*y)").unwrap()));
    }
}
