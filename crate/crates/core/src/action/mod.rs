//! The generalized action groupoid `H⋉K`, the groupoid object `P(φ)` of a
//! hom over `H`, and the equivalence witnesses between them.

mod pfunctor;
mod sections;
mod witness;

pub use pfunctor::{p_functor, p_on_2cells, p_on_arrows, PObject};
pub use sections::{quotient_sheaf, sections_bijection, sheaf_unit, QuotientSheaf, SectionsBijection, SheafUnit};
pub use witness::{epsilon_witness, inverse_image_compat, realize_representable, EpsilonWitness, InverseImage, RealizeWitness};

use std::sync::Arc;

use crate::equivariant::GroupoidObject;
use crate::error::Result;
use crate::fintop::{CMap, TupleSpace};
use crate::groupoid::{cech_along, CechGroupoid, FinGroupoid, GroupoidHom, GroupoidParts, OverGroupoid};

/// `H⋉K` over `H`. Arrows are pairs `(h, k)` with `t(h) = μ1(k)`, running
/// from `h^{-1}·s(k)` to `t(k)`.
#[derive(Clone, Debug)]
pub struct ActionGroupoid {
    pub over: OverGroupoid,
    pub pairs: TupleSpace,
    /// `k ↦ (1_{μ1 k}, k)` from the underlying groupoid of `K`.
    pub tau: GroupoidHom,
    pub object: GroupoidObject,
}

impl ActionGroupoid {
    pub fn groupoid(&self) -> &Arc<FinGroupoid> {
        self.over.total()
    }

    pub fn theta(&self) -> &GroupoidHom {
        self.over.structure()
    }

    pub fn arrow(&self, h: usize, k: usize) -> Option<usize> {
        self.pairs.find(&[h, k])
    }

    /// `(h, k)` of an arrow.
    pub fn parts(&self, a: usize) -> (usize, usize) {
        (self.pairs.comp(a, 0), self.pairs.comp(a, 1))
    }
}

pub fn action_groupoid(k: &GroupoidObject) -> Result<ActionGroupoid> {
    let h = k.base();
    let inner = k.inner();
    let (k0, k1) = (k.k0(), k.k1());
    let pairs = TupleSpace::build(
        &[h.arr(), inner.arr()],
        (0..inner.n_arr()).flat_map(|a| h.arrows_to(k1.moment(a)).iter().map(move |&g| vec![g, a])),
    );
    let n = pairs.len();
    let part = |i: usize| (pairs.comp(i, 0), pairs.comp(i, 1));
    let find = |g: usize, a: usize| pairs.find(&[g, a]).expect("action arrow");
    let src = (0..n)
        .map(|i| {
            let (g, a) = part(i);
            k0.act(h.inv(g), inner.s(a))
        })
        .collect();
    let tgt = (0..n).map(|i| inner.t(part(i).1)).collect();
    let unit = (0..inner.n_obj()).map(|x| find(h.unit(k0.moment(x)), inner.unit(x))).collect();
    let inv = (0..n)
        .map(|i| {
            let (g, a) = part(i);
            find(h.inv(g), k1.act(h.inv(g), inner.inv(a)))
        })
        .collect();
    let groupoid = FinGroupoid::assemble(GroupoidParts {
        obj: inner.obj().clone(),
        arr: pairs.space().clone(),
        src,
        tgt,
        unit,
        inv,
        comp: |p: usize, q: usize| {
            let ((g2, a2), (g1, a1)) = (part(p), part(q));
            let moved = k1.act(g2, a1);
            let a = inner.try_compose(a2, moved)?;
            pairs.find(&[h.compose(g2, g1), a])
        },
    })?;
    let groupoid = Arc::new(groupoid);
    let theta = GroupoidHom::new(
        groupoid.clone(),
        h.clone(),
        k0.moment_table().to_vec(),
        (0..n).map(|i| part(i).0).collect(),
    )?;
    let tau = GroupoidHom::new(
        inner.clone(),
        groupoid.clone(),
        (0..inner.n_obj()).collect(),
        (0..inner.n_arr()).map(|a| find(h.unit(k1.moment(a)), a)).collect(),
    )?;
    Ok(ActionGroupoid { over: OverGroupoid::new(theta), pairs, tau, object: k.clone() })
}

/// The factorization `θ = p∘θ'` through the Čech groupoid of `μ0`:
/// `θ'(h, k) = (h, h^{-1}·s(k), t(k))`.
#[derive(Clone, Debug)]
pub struct ThetaPrime {
    pub cech: CechGroupoid,
    pub map: GroupoidHom,
}

pub fn theta_prime(ag: &ActionGroupoid) -> Result<ThetaPrime> {
    let k = &ag.object;
    let h = k.base();
    let mu0 = CMap::new(k.inner().obj().clone(), h.obj().clone(), k.k0().moment_table().to_vec())?;
    let cech = cech_along(h, &mu0)?;
    let g = ag.groupoid();
    let f1 = (0..g.n_arr())
        .map(|a| {
            let (hh, _) = ag.parts(a);
            cech.arrows.find(&[hh, g.s(a), g.t(a)]).expect("Čech arrow")
        })
        .collect();
    let map = GroupoidHom::new(g.clone(), cech.groupoid.clone(), (0..g.n_obj()).collect(), f1)?;
    debug_assert!(map.then(&cech.projection).map(|c| &c == ag.theta()).unwrap_or(false));
    Ok(ThetaPrime { cech, map })
}
