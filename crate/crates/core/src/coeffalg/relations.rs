//! Commutation relations between highest-weight-column coefficients
//! `C_v = C^lambda_{v; v_lambda}` and the unitarity relation.

use super::{AlgebraElement, FunctionAlgebra, ModuleId};
use crate::error::{invalid, Result};
use crate::rootdata::Weight;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    /// `C_v C_w - q^{(lambda,Lambda)-(mu,nu)} C_w C_v` modulo `N(mu,lambda;nu,Lambda)`
    N,
    /// `C_v C_w - q^{(mu,nu)-(lambda,Lambda)} C_w C_v` modulo `N(nu,Lambda;mu,lambda)`
    NRev,
    /// `C_v^* C_w - q^{(mu,nu)-(lambda,Lambda)} C_w C_v^*` modulo `O(mu,lambda;nu,Lambda)`
    O,
}

impl std::str::FromStr for Variant {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "n" => Ok(Variant::N),
            "n_rev" | "nrev" => Ok(Variant::NRev),
            "o" => Ok(Variant::O),
            _ => invalid(format!("unknown variant {s:?} (expected N, N_rev or O)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CommutationReport {
    pub variant: Variant,
    pub defect: AlgebraElement,
    pub defect_norm: f64,
    /// number of pairs in the index set
    pub span_size: usize,
    pub in_span: bool,
    pub residual: f64,
    pub in_span_opp: bool,
    pub residual_opp: f64,
    /// the span and its opposite coincide
    pub spans_agree: bool,
}

impl CommutationReport {
    pub fn holds(&self) -> bool {
        self.in_span && self.in_span_opp && self.spans_agree
    }
}

struct Side {
    id: ModuleId,
    top: usize,
    weight: Weight,
}

impl FunctionAlgebra {
    fn side(&self, lambda: &Weight, v: usize) -> Result<Side> {
        let id = self.irreducible(lambda)?;
        let m = self.module(id);
        if v >= m.dim() {
            return invalid(format!("basis index {v} out of range for V({})", lambda.pretty()));
        }
        Ok(Side { id, top: self.highest_index(id)?, weight: m.weight(v).clone() })
    }

    fn column(&self, s: &Side, v: usize) -> AlgebraElement {
        AlgebraElement::coefficient(super::Factor { module: s.id, bra: v, ket: s.top })
    }

    /// Basis pairs `(v', w')` of weights `(mu', nu')` with `mu' + nu' = mu + nu`
    /// selected by `keep(mu', nu')`.
    fn pairs(&self, a: &Side, b: &Side, keep: impl Fn(&Weight, &Weight) -> bool) -> Vec<(usize, usize)> {
        let (ma, mb) = (self.module(a.id), self.module(b.id));
        let mut out = Vec::new();
        for x in 0..ma.dim() {
            for y in 0..mb.dim() {
                if keep(ma.weight(x), mb.weight(y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    fn strictly_above(&self, x: &Weight, y: &Weight) -> bool {
        x != y && self.rs.dominance_leq(y, x).unwrap_or(false)
    }

    /// Check one commutation relation for the basis vectors `v` of `V(lambda)`
    /// and `w` of `V(big_lambda)`.
    pub fn commutation_defect(
        &self,
        lambda: &Weight,
        big_lambda: &Weight,
        v: usize,
        w: usize,
        variant: Variant,
    ) -> Result<CommutationReport> {
        let a = self.side(lambda, v)?;
        let b = self.side(big_lambda, w)?;
        let rs = &self.rs;
        let (mu, nu) = (a.weight.clone(), b.weight.clone());
        let ll = rs.inner_f64(lambda, big_lambda);
        let mn = rs.inner_f64(&mu, &nu);
        let cv = self.column(&a, v);
        let cw = self.column(&b, w);
        let total = &mu + &nu;
        let (defect, span, opp): (AlgebraElement, Vec<AlgebraElement>, Vec<AlgebraElement>) = match variant {
            Variant::N => {
                let d = &(&cv * &cw) - &(&cw * &cv).scale_re(self.q.powf(ll - mn));
                let ps = self.pairs(&a, &b, |x, y| {
                    &(x + y) == &total && self.strictly_above(x, &mu) && self.strictly_above(&nu, y)
                });
                let (s, o) = self.products(&a, &b, &ps, false);
                (d, s, o)
            }
            Variant::NRev => {
                let d = &(&cv * &cw) - &(&cw * &cv).scale_re(self.q.powf(mn - ll));
                // N(nu,Lambda;mu,lambda): w' above nu, v' below mu
                let ps = self.pairs(&a, &b, |x, y| {
                    &(x + y) == &total && self.strictly_above(y, &nu) && self.strictly_above(&mu, x)
                });
                let (s, o) = self.products(&a, &b, &ps, false);
                // spanning products there are C_{w'} C_{v'}
                (d, o, s)
            }
            Variant::O => {
                let sv = self.star(&cv)?;
                let d = &(&sv * &cw) - &(&cw * &sv).scale_re(self.q.powf(mn - ll));
                let ps = self.pairs(&a, &b, |x, y| {
                    self.strictly_above(&mu, x) && self.strictly_above(&nu, y) && &(&mu - x) == &(&nu - y)
                });
                let (s, o) = self.products(&a, &b, &ps, true);
                (d, s, o)
            }
        };
        let defect = defect.prune(0.0);
        let defect_norm = self.frame_norm(&defect)?;
        let fit = self.in_span(&defect, &span)?;
        let fit_opp = self.in_span(&defect, &opp)?;
        let spans_agree = self.same_span(&span, &opp)?;
        Ok(CommutationReport {
            variant,
            defect,
            defect_norm,
            span_size: span.len(),
            in_span: fit.in_span,
            residual: fit.residual,
            in_span_opp: fit_opp.in_span,
            residual_opp: fit_opp.residual,
            spans_agree,
        })
    }

    /// For each pair, `(X_v' C_w', C_w' X_v')` with `X = C` or `C^*`.
    fn products(
        &self,
        a: &Side,
        b: &Side,
        ps: &[(usize, usize)],
        starred: bool,
    ) -> (Vec<AlgebraElement>, Vec<AlgebraElement>) {
        let mut s = Vec::with_capacity(ps.len());
        let mut o = Vec::with_capacity(ps.len());
        for &(x, y) in ps {
            let mut cx = self.column(a, x);
            if starred {
                cx = self.star(&cx).expect("dual module of an irreducible");
            }
            let cy = self.column(b, y);
            s.push(&cx * &cy);
            o.push(&cy * &cx);
        }
        (s, o)
    }

    /// Whether two finite families span the same subspace.
    pub fn same_span(&self, x: &[AlgebraElement], y: &[AlgebraElement]) -> Result<bool> {
        for t in x {
            if !self.in_span(t, y)?.in_span {
                return Ok(false);
            }
        }
        for t in y {
            if !self.in_span(t, x)?.in_span {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `sum_b (C^lambda_{b;a})^* C^lambda_{b;c}`.
    pub fn unitarity_sum(&self, lambda: &Weight, a: usize, c: usize) -> Result<AlgebraElement> {
        let id = self.irreducible(lambda)?;
        let d = self.module(id).dim();
        if a >= d || c >= d {
            return invalid(format!("basis index out of range for V({})", lambda.pretty()));
        }
        let mut acc = AlgebraElement::zero();
        for b in 0..d {
            let s = self.star(&self.coeff_in(id, b, a)?)?;
            acc = &acc + &(&s * &self.coeff_in(id, b, c)?);
        }
        Ok(acc)
    }

    /// The unitarity relation `sum_b (C_{b;a})^* C_{b;c} = delta_{ac} 1`.
    pub fn unitarity_check(&self, lambda: &Weight, a: usize, c: usize) -> Result<bool> {
        let lhs = self.unitarity_sum(lambda, a, c)?;
        let rhs = if a == c { AlgebraElement::one() } else { AlgebraElement::zero() };
        self.equals(&lhs, &rhs)
    }
}

