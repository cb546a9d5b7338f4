//! Quantized function algebras on generalized flag manifolds `U/K_S`:
//! the spaces `B_lambda`, the factorized subalgebra `A_S`, invariance under
//! `U_q(l_S)`, Gel'fand nodes, PRV witnesses and spherical weights.

use crate::coeffalg::{AlgebraElement, FunctionAlgebra};
use crate::error::{invalid, Result};
use crate::rootdata::{RootSystem, TypeLetter, Weight, Q};
use crate::uqmod::{branch_to_levi, build_irreducible_float, decompose_highest_weights, dual_module, tensor, Generator};
use crate::weyl::{descent_to_dominant, minimal_coset_reps_capped, orbit_with_witnesses, ParabolicData, WeylWord};
use serde::Serialize;
use std::sync::Arc;

/// A proper subset `S` of the simple roots with its parabolic data.
#[derive(Clone, Debug)]
pub struct FlagContext {
    rs: Arc<RootSystem>,
    s: Vec<usize>,
    sc: Vec<usize>,
    parabolic: ParabolicData,
}

impl FlagContext {
    pub fn new(rs: Arc<RootSystem>, s: &[usize]) -> Result<Self> {
        Self::with_cap(rs, s, crate::weyl::DEFAULT_GROUP_CAP)
    }

    pub fn with_cap(rs: Arc<RootSystem>, s: &[usize], cap: usize) -> Result<Self> {
        let parabolic = minimal_coset_reps_capped(&rs, s, cap)?;
        let s = parabolic.s.clone();
        let sc = (0..rs.rank()).filter(|j| !s.contains(j)).collect();
        Ok(FlagContext { rs, s, sc, parabolic })
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn s(&self) -> &[usize] {
        &self.s
    }

    pub fn complement(&self) -> &[usize] {
        &self.sc
    }

    pub fn parabolic(&self) -> &ParabolicData {
        &self.parabolic
    }

    /// `W^S`, sorted by length.
    pub fn minimal_reps(&self) -> &[WeylWord] {
        &self.parabolic.minimal_reps
    }

    /// `lambda` in `P(S^c)`: integral and supported on `S^c`.
    pub fn in_p(&self, lambda: &Weight) -> bool {
        lambda.rank() == self.rs.rank() && lambda.is_integral() && self.s.iter().all(|&i| lambda.int(i) == 0)
    }

    pub fn in_p_plus(&self, lambda: &Weight) -> bool {
        self.in_p(lambda) && lambda.is_dominant()
    }

    pub fn in_p_plus_plus(&self, lambda: &Weight) -> bool {
        self.in_p_plus(lambda) && self.sc.iter().all(|&i| lambda.int(i) > 0)
    }

    pub fn fundamental_weights(&self) -> Vec<Weight> {
        self.sc.iter().map(|&i| Weight::fundamental(self.rs.rank(), i)).collect()
    }

    /// Elements of `P_++(S^c)` with all coefficients at most `max`.
    pub fn regular_weights(&self, max: i64) -> Vec<Weight> {
        let mut out = vec![vec![0i64; self.rs.rank()]];
        for &i in &self.sc {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (1..=max).map(move |k| {
                        let mut w = v.clone();
                        w[i] = k;
                        w
                    })
                })
                .collect();
        }
        out.iter().map(|v| Weight::from_ints(v)).collect()
    }

    /// The fundamental weight of the single node outside `S`.
    pub fn node_weight(&self) -> Result<Weight> {
        if self.sc.len() != 1 {
            return invalid("this needs exactly one node outside S");
        }
        Ok(Weight::fundamental(self.rs.rank(), self.sc[0]))
    }

    fn check_algebra(&self, alg: &FunctionAlgebra) -> Result<()> {
        if alg.root_system().label() != self.rs.label() {
            return invalid("algebra and flag context have different root systems");
        }
        Ok(())
    }

    fn check_p_plus(&self, lambda: &Weight) -> Result<()> {
        if !self.in_p_plus(lambda) {
            return invalid(format!("{} is not in P+(S^c)", lambda.pretty()));
        }
        Ok(())
    }
}

/// `B_lambda = span{ C^lambda_{v; v_lambda} }` over the weight basis.
pub fn b_lambda_basis(alg: &FunctionAlgebra, ctx: &FlagContext, lambda: &Weight) -> Result<Vec<AlgebraElement>> {
    ctx.check_algebra(alg)?;
    ctx.check_p_plus(lambda)?;
    let id = alg.irreducible(lambda)?;
    let top = alg.highest_index(id)?;
    (0..alg.module(id).dim()).map(|v| alg.coeff_in(id, v, top)).collect()
}

/// One spanning element `(C^lambda_{v; v_lambda})^* C^lambda_{w; v_lambda}` of `A_S`.
#[derive(Clone, Debug)]
pub struct AsGenerator {
    pub lambda: Weight,
    pub v: usize,
    pub w: usize,
    pub element: AlgebraElement,
}

impl AsGenerator {
    /// `v` and `w` have the same weight.
    pub fn same_weight(&self, alg: &FunctionAlgebra) -> bool {
        let id = alg.irreducible(&self.lambda).expect("registered module");
        let m = alg.module(id);
        m.weight(self.v) == m.weight(self.w)
    }
}

/// All products `(C_{v; v_lambda})^* C_{w; v_lambda}` for the given weights
/// (default: the fundamental weights of `S^c`). They span `A_S` as `lambda`
/// runs over `P_+(S^c)`.
pub fn a_s_generators(alg: &FunctionAlgebra, ctx: &FlagContext, lambdas: Option<&[Weight]>) -> Result<Vec<AsGenerator>> {
    ctx.check_algebra(alg)?;
    let defaults = ctx.fundamental_weights();
    let lambdas = lambdas.unwrap_or(&defaults);
    let mut out = Vec::new();
    for lam in lambdas {
        let b = b_lambda_basis(alg, ctx, lam)?;
        let stars: Vec<AlgebraElement> = b.iter().map(|x| alg.star(x)).collect::<Result<_>>()?;
        for (v, sv) in stars.iter().enumerate() {
            for (w, cw) in b.iter().enumerate() {
                out.push(AsGenerator { lambda: lam.clone(), v, w, element: sv * cw });
            }
        }
    }
    Ok(out)
}

/// Generators with `v` and `w` of equal weight: the part of `A_S` invariant
/// under the right torus action as well.
pub fn zero_weight_generators(alg: &FunctionAlgebra, ctx: &FlagContext, lambdas: Option<&[Weight]>) -> Result<Vec<AsGenerator>> {
    Ok(a_s_generators(alg, ctx, lambdas)?.into_iter().filter(|g| g.same_weight(alg)).collect())
}

/// `X.phi = eps(X) phi` for `K_i^{+-1}` (all `i`) and `E_j, F_j` (`j` in `S`).
pub fn is_invariant(alg: &FunctionAlgebra, ctx: &FlagContext, phi: &AlgebraElement) -> Result<bool> {
    ctx.check_algebra(alg)?;
    for i in 0..ctx.rs.rank() {
        for g in [Generator::K(i), Generator::KInv(i)] {
            if !alg.equals(&alg.left_act(g, phi), phi)? {
                return Ok(false);
            }
        }
    }
    for &j in &ctx.s {
        for g in [Generator::E(j), Generator::F(j)] {
            if !alg.is_zero(&alg.left_act(g, phi))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GelfandFamily {
    HermitianSymmetric,
    /// `(SO(2l+1), U(l))`
    OddOrthogonal,
    /// `(Sp(l), U(1) x Sp(l-1))`
    Symplectic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GelfandCase {
    pub letter: TypeLetter,
    pub rank: usize,
    /// 0-based node
    pub node: usize,
    pub family: GelfandFamily,
}

/// Nodes whose maximal parabolic gives a Gel'fand pair.
pub fn gelfand_nodes(letter: TypeLetter, rank: usize) -> Result<Vec<GelfandCase>> {
    RootSystem::new(letter, rank)?;
    use GelfandFamily::*;
    let l = rank;
    let nodes: Vec<(usize, GelfandFamily)> = match letter {
        TypeLetter::A => (1..=l).map(|i| (i, HermitianSymmetric)).collect(),
        TypeLetter::B => vec![(1, HermitianSymmetric), (l, OddOrthogonal)],
        TypeLetter::C => vec![(1, Symplectic), (l, HermitianSymmetric)],
        TypeLetter::D => vec![(1, HermitianSymmetric), (l - 1, HermitianSymmetric), (l, HermitianSymmetric)],
        TypeLetter::E if l == 6 => vec![(1, HermitianSymmetric), (6, HermitianSymmetric)],
        TypeLetter::E if l == 7 => vec![(7, HermitianSymmetric)],
        _ => Vec::new(),
    };
    let mut out: Vec<GelfandCase> =
        nodes.into_iter().map(|(i, family)| GelfandCase { letter, rank, node: i - 1, family }).collect();
    out.sort_by_key(|c| c.node);
    Ok(out)
}

/// A Weyl group element `w` with `[varpi - w varpi] = mu`, where `varpi` is
/// the fundamental weight of the single node outside `S` and `[.]` the
/// dominant representative. The orbit of `varpi` is searched breadth first;
/// the witness is the shortest element reaching the orbit point.
pub fn prv_witness(ctx: &FlagContext, mu: &Weight, cap: usize) -> Result<Option<WeylWord>> {
    let w0 = ctx.node_weight()?;
    if !mu.is_dominant() || mu.rank() != ctx.rs.rank() {
        return invalid(format!("{} is not a dominant weight", mu.pretty()));
    }
    let orbit = orbit_with_witnesses(&ctx.rs, &w0, cap)?;
    let mut cands: Vec<(Weight, WeylWord)> = orbit.into_iter().collect();
    cands.sort_by(|a, b| {
        a.1.length()
            .cmp(&b.1.length())
            .then_with(|| a.1.letters().cmp(b.1.letters()))
    });
    for (nu, w) in cands {
        let (_, dom) = descent_to_dominant(&ctx.rs, &(&w0 - &nu));
        if &dom == mu {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Multiplicity of the trivial `U_q(l_S)`-type in `V(lambda)`.
pub fn trivial_multiplicity(ctx: &FlagContext, lambda: &Weight, cap: usize) -> Result<usize> {
    if ctx.rs.root_lattice_coords(lambda).is_none() {
        return Ok(0);
    }
    let m = build_irreducible_float(&ctx.rs, lambda, 0.5, cap)?;
    Ok(branch_to_levi(&m, &ctx.s)?
        .into_iter()
        .filter(|e| e.weight.is_zero())
        .map(|e| e.multiplicity)
        .sum())
}

/// Minimal additive generators of the spherical weights with all
/// coefficients at most `max` (the trivial `l_S`-type occurs in `V(lambda)`).
pub fn spherical_weights(ctx: &FlagContext, max: i64, cap: usize) -> Result<Vec<Weight>> {
    let r = ctx.rs.rank();
    let mut all: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..r {
        all = all.into_iter().flat_map(|v| (0..=max).map(move |k| [v.clone(), vec![k]].concat())).collect();
    }
    let mut spherical: Vec<Vec<i64>> = Vec::new();
    for v in all {
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        if trivial_multiplicity(ctx, &Weight::from_ints(&v), cap)? > 0 {
            spherical.push(v);
        }
    }
    let decomposable = |v: &Vec<i64>| {
        spherical.iter().any(|a| {
            a != v && a.iter().zip(v).all(|(x, y)| x <= y) && {
                let b: Vec<i64> = v.iter().zip(a).map(|(y, x)| y - x).collect();
                spherical.contains(&b)
            }
        })
    };
    let mut gens: Vec<Weight> =
        spherical.iter().filter(|v| !decomposable(v)).map(|v| Weight::from_ints(v)).collect();
    gens.sort();
    Ok(gens)
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterRow {
    pub coefficients: Vec<i64>,
    pub weight: Weight,
    pub dim: u64,
    /// multiplicity of the trivial `l_S`-type in `V(weight)`
    pub invariants: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorizationReport {
    pub node: usize,
    pub fundamental_sphericals: Vec<Weight>,
    /// highest weights of `V(varpi)^* (x) V(varpi)` with multiplicity
    pub components: Vec<(Weight, usize)>,
    /// every fundamental spherical weight occurs
    pub sphericals_occur: bool,
    pub multiplicity_free: bool,
    /// every component is spherical or trivial
    pub all_components_spherical: bool,
    pub witnesses: Vec<(Weight, Option<String>)>,
    pub character_rows: Vec<CharacterRow>,
    /// each `V(sum n_i mu_i)` has a one-dimensional invariant space
    pub characters_match: bool,
}

/// Evidence for `A_S = C_q[U/K_S]` at a Gel'fand node.
pub fn factorization_evidence(ctx: &FlagContext, degree_bound: usize, cap: usize) -> Result<FactorizationReport> {
    let varpi = ctx.node_weight()?;
    let node = ctx.sc[0];
    if !gelfand_nodes(ctx.rs.letter(), ctx.rs.rank())?.iter().any(|c| c.node == node) {
        return invalid(format!("node {} is not a Gel'fand node of {}", node + 1, ctx.rs.label()));
    }
    let sph = spherical_weights(ctx, 2, cap)?;
    let v = build_irreducible_float(&ctx.rs, &varpi, 0.5, cap)?;
    let prod = tensor(&dual_module(&v)?, &v)?;
    let components = decompose_highest_weights(&prod);
    let sphericals_occur = sph.iter().all(|m| components.iter().any(|(w, k)| w == m && *k >= 1));
    let multiplicity_free = components.iter().all(|(_, k)| *k == 1);
    let mut all_components_spherical = true;
    for (w, _) in &components {
        if !w.is_zero() && trivial_multiplicity(ctx, w, cap)? == 0 {
            all_components_spherical = false;
        }
    }
    let witnesses = sph
        .iter()
        .map(|m| Ok((m.clone(), prv_witness(ctx, m, cap.max(crate::weyl::DEFAULT_GROUP_CAP))?.map(|w| w.to_string()))))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    let mut combos: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..sph.len() {
        combos = combos
            .into_iter()
            .flat_map(|c| (0..=degree_bound as i64).map(move |k| [c.clone(), vec![k]].concat()))
            .collect();
    }
    combos.retain(|c| c.iter().sum::<i64>() <= degree_bound as i64);
    let mut characters_match = true;
    for c in combos {
        let mut w = Weight::zero(ctx.rs.rank());
        for (k, m) in c.iter().zip(&sph) {
            w = &w + &(m * Q::from_integer(*k));
        }
        let invariants = trivial_multiplicity(ctx, &w, cap)?;
        characters_match &= invariants == 1;
        rows.push(CharacterRow { coefficients: c, dim: ctx.rs.weyl_dimension(&w)?, weight: w, invariants });
    }
    Ok(FactorizationReport {
        node,
        fundamental_sphericals: sph,
        components,
        sphericals_occur,
        multiplicity_free,
        all_components_spherical,
        witnesses,
        character_rows: rows,
        characters_match,
    })
}
