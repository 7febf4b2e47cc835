use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{Poly, Scalar, Universe, Var};

use super::ring::CurveRing;

/// Names and weights of the u-coordinates.
pub const U_VARS: [(&str, i32); 4] = [("u2", 2), ("u4", 4), ("u5", 5), ("u7", 7)];

/// Universe u2, u4, u5, u7 followed by `extra`.
pub fn u_universe(extra: &[Var]) -> Arc<Universe> {
    let mut vars: Vec<Var> = U_VARS.iter().map(|(n, w)| Var { name: n.to_string(), weight: *w }).collect();
    vars.extend(extra.iter().cloned());
    Universe::from_vars(vars)
}

/// Power sums P_{k,l} = X1^k Y1^l + X2^k Y2^l and the mixed sums
/// S_{k,l} = X1^k Y2^l + X2^k Y1^l, expressed in u-coordinates.
struct SumTable {
    universe: Arc<Universe>,
    cache: HashMap<(bool, u32, u32), Poly>,
    e2x: Poly,
    e2y: Poly,
    s1x: Poly,
    s1y: Poly,
}

impl SumTable {
    fn new(universe: &Arc<Universe>) -> Self {
        let v = |i| Poly::var_at(universe, i);
        let (u2, u4, u5, u7) = (v(0), v(1), v(2), v(3));
        let two = Scalar::from_i64(2);
        // X1 X2 and Y1 Y2
        let e2x = &(&u2 * &u2) - &u4;
        let e2y = &(&u7 * &u7) - &(&u4 * &(&u5 * &u5));
        let mut cache = HashMap::new();
        for mixed in [false, true] {
            cache.insert((mixed, 0, 0), Poly::constant(universe, two.clone()));
            cache.insert((mixed, 1, 0), u2.scale(&two));
            cache.insert((mixed, 0, 1), u7.scale(&two));
        }
        let uu = &u2 * &u7;
        let cross = &u4 * &u5;
        cache.insert((false, 1, 1), (&uu + &cross).scale(&two));
        cache.insert((true, 1, 1), (&uu - &cross).scale(&two));
        SumTable { universe: universe.clone(), cache, e2x, e2y, s1x: u2.scale(&two), s1y: u7.scale(&two) }
    }

    fn get(&mut self, mixed: bool, k: u32, l: u32) -> Poly {
        if let Some(p) = self.cache.get(&(mixed, k, l)) {
            return p.clone();
        }
        let p = if k >= 2 {
            let (a, b) = (self.get(mixed, k - 1, l), self.get(mixed, k - 2, l));
            &(&self.s1x * &a) - &(&self.e2x * &b)
        } else {
            // l >= 2 here, since all k, l < 2 entries are seeded
            let (a, b) = (self.get(mixed, k, l - 1), self.get(mixed, k, l - 2));
            &(&self.s1y * &a) - &(&self.e2y * &b)
        };
        debug_assert!(Arc::ptr_eq(p.universe(), &self.universe));
        self.cache.insert((mixed, k, l), p.clone());
        p
    }
}

struct XyIndex {
    x1: usize,
    y1: usize,
    x2: usize,
    y2: usize,
}

impl XyIndex {
    fn of(u: &Universe) -> Result<Self> {
        let find = |n: &str| u.index(n).ok_or_else(|| Error::UnknownVariable(n.to_string()));
        Ok(XyIndex { x1: find("X1")?, y1: find("Y1")?, x2: find("X2")?, y2: find("Y2")? })
    }

    fn swap_perm(&self, len: usize) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..len).collect();
        perm.swap(self.x1, self.x2);
        perm.swap(self.y1, self.y2);
        perm
    }
}

/// Rewrites a polynomial in X1, Y1, X2, Y2, symmetric under
/// (X1, Y1) <-> (X2, Y2), as a polynomial in u2, u4, u5, u7. Other variables
/// of the input are carried through as parameters.
pub fn symmetrize(f: &Poly) -> Result<Poly> {
    let u = f.universe();
    let ix = XyIndex::of(u)?;
    let swapped = f.permute(&ix.swap_perm(u.len()));
    if swapped != *f {
        let diff = f - &swapped;
        let (m, _) = diff.sorted_terms()[0];
        return Err(Error::Asymmetric { monomial: f.monomial_text(m) });
    }

    let params: Vec<usize> = (0..u.len()).filter(|i| ![ix.x1, ix.y1, ix.x2, ix.y2].contains(i)).collect();
    let extra: Vec<Var> = params.iter().map(|&i| u.vars()[i].clone()).collect();
    let out_u = u_universe(&extra);
    let mut table = SumTable::new(&out_u);
    let mut out = Poly::zero(&out_u);

    for (m, c) in f.terms() {
        let (k1, l1, k2, l2) = (m[ix.x1], m[ix.y1], m[ix.x2], m[ix.y2]);
        // one representative per swap orbit
        if (k1, l1) > (k2, l2) {
            continue;
        }
        let mut pm = vec![0u32; out_u.len()];
        for (j, &i) in params.iter().enumerate() {
            pm[4 + j] = m[i];
        }
        let param_part = Poly::monomial(&out_u, pm, c.clone());
        let (a, b) = (k1.min(k2), l1.min(l2));
        let common = &table.e2x.pow(a) * &table.e2y.pow(b);
        let orbit = if (k1, l1) == (k2, l2) {
            common
        } else {
            let (dk, dl) = (k1.abs_diff(k2), l1.abs_diff(l2));
            // excesses on different points give the mixed sum
            let mixed = dk > 0 && dl > 0 && ((k1 > k2) != (l1 > l2));
            &common * &table.get(mixed, dk, dl)
        };
        out = &out + &(&param_part * &orbit);
    }
    Ok(out)
}

/// Symmetrizes `f` after reducing Y1^2 and Y2^2 with the curve of `ring`.
/// Numeric parameters of the ring are substituted first.
pub fn symmetrize_reduced(ring: &CurveRing, f: &Poly) -> Result<Poly> {
    let reduced = ring.from_xy_poly(f)?;
    symmetrize(&ring.to_xy_poly(&reduced)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvering::params::CurveParams;
    use crate::exactalg::parse_poly;

    fn xy() -> Arc<Universe> {
        Universe::new(&[("X1", 2), ("Y1", 7), ("X2", 2), ("Y2", 7)])
    }

    fn check(src: &str, expected: &str) {
        let f = parse_poly(src, &xy()).unwrap();
        let r = symmetrize(&f).unwrap();
        assert_eq!(r, parse_poly(expected, r.universe()).unwrap(), "{src}");
    }

    #[test]
    fn basic_sums() {
        check("X1 + X2", "2*u2");
        check("X1*Y1 + X2*Y2", "2*(u2*u7 + u4*u5)");
        check("X1*Y2 + X2*Y1", "2*(u2*u7 - u4*u5)");
        check("X1^2 + X2^2", "2*(u4 + u2^2)");
        check("X1*X2", "u2^2 - u4");
        check("Y1*Y2", "u7^2 - u4*u5^2");
        check("7", "7");
    }

    #[test]
    fn asymmetric_rejected() {
        let f = parse_poly("X1 + 2*X2", &xy()).unwrap();
        assert!(matches!(symmetrize(&f), Err(Error::Asymmetric { .. })));
    }

    #[test]
    fn round_trip_in_ring() {
        let ring = CurveRing::new(CurveParams::symbolic());
        let f = parse_poly("X1^3*Y2^2*y4 + X2^3*Y1^2*y4 + X1^2*X2^2*Y1*Y2 - 3*Y1^3 - 3*Y2^3", ring.xy_universe())
            .unwrap();
        let r = symmetrize(&f).unwrap();
        assert!(r.has_integer_coefficients());
        assert_eq!(ring.eval_u_poly(&r).unwrap(), ring.from_xy_poly(&f).unwrap());
    }

    #[test]
    fn reduced_variant() {
        let ring = CurveRing::new(CurveParams::zero());
        let f = parse_poly("Y1^2 + Y2^2", &xy()).unwrap();
        let r = symmetrize_reduced(&ring, &f).unwrap();
        assert_eq!(r, symmetrize(&parse_poly("X1^7 + X2^7", &xy()).unwrap()).unwrap());
    }
}
