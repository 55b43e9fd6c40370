use std::sync::Arc;

use super::{action_groupoid, p_functor, ActionGroupoid, PObject};
use crate::equivariant::{pullback_sheaf, representable_sheaf, GroupoidObject, PulledBackSheaf, Representable};
use crate::error::Result;
use crate::fintop::OpenSet;
use crate::groupoid::{
    is_morita_equivalence, weak_pullback, EquivalencePackage, FinGroupoid, GroupoidHom, MoritaCertificate, NatTrans,
    OverGroupoid, OverPackage, SliceCell, SliceTwoCell, WeakPullback,
};

/// `H⋉P(φ) ≃ φ` over `H`: forward `ε̃` with over-cell `ξ^{-1}`, backward `χ`,
/// `ε̃∘χ = id` and `λ: χ∘ε̃ ⇒ id`.
#[derive(Clone, Debug)]
pub struct EpsilonWitness {
    pub p: PObject,
    pub realization: ActionGroupoid,
    /// `ξ(h, x) = h`, a transformation `φ∘ε̃ ⇒ θ`.
    pub xi: NatTrans,
    pub package: EquivalencePackage,
}

pub fn epsilon_witness(phi: &OverGroupoid) -> Result<EpsilonWitness> {
    let p = p_functor(phi)?;
    let realization = action_groupoid(&p.object)?;
    let a = realization.groupoid();
    let g = phi.total();
    let f = phi.structure();
    let h = phi.base();
    let eps_tilde = GroupoidHom::new(
        a.clone(),
        g.clone(),
        (0..a.n_obj()).map(|o| p.objects.comp(o, 1)).collect(),
        (0..a.n_arr()).map(|i| p.arrows.comp(realization.parts(i).1, 1)).collect(),
    )?;
    let xi = NatTrans::new(
        eps_tilde.then(f)?,
        realization.theta().clone(),
        (0..a.n_obj()).map(|o| p.objects.comp(o, 0)).collect(),
    )?;
    let chi = GroupoidHom::new(
        g.clone(),
        a.clone(),
        (0..g.n_obj()).map(|x| p.object_of(h.unit(f.f0(x)), x).expect("χ object")).collect(),
        (0..g.n_arr())
            .map(|b| {
                let k = p.arrow_of(h.unit(f.f0(g.t(b))), b).expect("χ arrow");
                realization.arrow(f.f1(b), k).expect("χ action arrow")
            })
            .collect(),
    )?;
    let lambda = NatTrans::new(
        eps_tilde.then(&chi)?,
        GroupoidHom::identity(a),
        (0..a.n_obj())
            .map(|o| {
                let (hh, x) = (p.objects.comp(o, 0), p.objects.comp(o, 1));
                let k = p.arrow_of(hh, g.unit(x)).expect("λ arrow");
                realization.arrow(hh, k).expect("λ action arrow")
            })
            .collect(),
    )?;
    let eps = NatTrans::identity(&GroupoidHom::identity(g));
    let package = EquivalencePackage::new(eps_tilde.clone(), chi.clone(), lambda.clone(), eps.clone())?;
    let fwd = SliceCell::new(realization.over.clone(), phi.clone(), eps_tilde, xi.inverse())?;
    let bwd = SliceCell::strict(phi.clone(), realization.over.clone(), chi)?;
    let over = OverPackage {
        eta: SliceTwoCell::new(fwd.then(&bwd)?, SliceCell::identity(&realization.over), lambda)?,
        eps: SliceTwoCell::new(bwd.then(&fwd)?, SliceCell::identity(phi), eps)?,
        forward: fwd,
        backward: bwd,
    };
    let package = package.with_over(over)?;
    Ok(EpsilonWitness { p, realization, xi, package })
}

/// The unit groupoid on an open `U` of `H0`, over `H` by inclusion.
pub(crate) fn open_over(h: &Arc<FinGroupoid>, u: &OpenSet) -> Result<OverGroupoid> {
    let (space, incl) = h.obj().subspace(u.members());
    let unit = Arc::new(FinGroupoid::unit_groupoid(&space));
    let f1 = incl.map().iter().map(|&x| h.unit(x)).collect();
    Ok(OverGroupoid::new(GroupoidHom::new(unit, h.clone(), incl.map().to_vec(), f1)?))
}

/// `H⋉m_U ≃ unit(U)` over `H` via `f_U(γ) = s(γ)`, `α_U(γ) = γ^{-1}`,
/// `g_U(x) = 1_x` and `λ_U(γ) = (γ, γ)`.
#[derive(Clone, Debug)]
pub struct RealizeWitness {
    pub m: Representable,
    pub realization: ActionGroupoid,
    pub open: OverGroupoid,
    pub package: EquivalencePackage,
    pub morita: MoritaCertificate,
}

pub fn realize_representable(h: &Arc<FinGroupoid>, u: &OpenSet) -> Result<RealizeWitness> {
    let m = representable_sheaf(h, u)?;
    let realization = action_groupoid(&GroupoidObject::discrete(&m.sheaf))?;
    let open = open_over(h, u)?;
    let a = realization.groupoid();
    let unit_u = open.total();
    // index of x ∈ H0 in the subspace U
    let pos = |x: usize| u.members().binary_search(&x).expect("point of U");
    let f_u = GroupoidHom::new(
        a.clone(),
        unit_u.clone(),
        m.arrows.iter().map(|&g| pos(h.s(g))).collect(),
        (0..a.n_arr()).map(|i| pos(h.s(m.arrows[realization.parts(i).1]))).collect(),
    )?;
    let alpha_u = NatTrans::new(
        realization.theta().clone(),
        f_u.then(open.structure())?,
        m.arrows.iter().map(|&g| h.inv(g)).collect(),
    )?;
    let unit_in_m = |x: usize| m.index_of(h.unit(x)).expect("unit in m_U");
    let g_u = GroupoidHom::new(
        unit_u.clone(),
        a.clone(),
        u.members().iter().map(|&x| unit_in_m(x)).collect(),
        u.members().iter().map(|&x| realization.arrow(h.unit(x), unit_in_m(x)).expect("unit arrow")).collect(),
    )?;
    let lambda = NatTrans::new(
        f_u.then(&g_u)?,
        GroupoidHom::identity(a),
        (0..m.arrows.len()).map(|i| realization.arrow(m.arrows[i], i).expect("λ arrow")).collect(),
    )?;
    let eps = NatTrans::identity(&GroupoidHom::identity(unit_u));
    let morita = is_morita_equivalence(&f_u);
    let package = EquivalencePackage::new(f_u.clone(), g_u.clone(), lambda.clone(), eps.clone())?;
    let fwd = SliceCell::new(realization.over.clone(), open.clone(), f_u, alpha_u)?;
    let bwd = SliceCell::strict(open.clone(), realization.over.clone(), g_u)?;
    let over = OverPackage {
        eta: SliceTwoCell::new(fwd.then(&bwd)?, SliceCell::identity(&realization.over), lambda)?,
        eps: SliceTwoCell::new(bwd.then(&fwd)?, SliceCell::identity(&open), eps)?,
        forward: fwd,
        backward: bwd,
    };
    let package = package.with_over(over)?;
    Ok(RealizeWitness { m, realization, open, package, morita })
}

/// The comparison between `G ×_H (H⋉m_U)` and `G⋉φ*(m_U)`:
/// `ζ(z, h, α) = (z, α^{-1}h)`, `ψ(z, h) = (z, 1_{s h}, h^{-1})`,
/// `ζ∘ψ = id` and `ω: id ⇒ ψ∘ζ`.
#[derive(Clone, Debug)]
pub struct InverseImage {
    pub pullback: WeakPullback,
    pub pulled: PulledBackSheaf,
    pub realization: ActionGroupoid,
    pub package: EquivalencePackage,
}

pub fn inverse_image_compat(phi: &GroupoidHom, u: &OpenSet) -> Result<InverseImage> {
    let (g, h) = (phi.dom(), phi.cod());
    let m = representable_sheaf(h, u)?;
    let upstairs = action_groupoid(&GroupoidObject::discrete(&m.sheaf))?;
    let w = weak_pullback(phi, upstairs.theta())?;
    let pulled = pullback_sheaf(phi, &m.sheaf)?;
    let realization = action_groupoid(&GroupoidObject::discrete(&pulled.sheaf))?;
    let (wg, rg) = (&w.groupoid, realization.groupoid());
    let pair = |z: usize, i: usize| pulled.pairs.find(&[z, i]).expect("pulled back point");
    let in_m = |a: usize| m.index_of(a).expect("arrow of m_U");

    let zeta0: Vec<usize> = (0..wg.n_obj())
        .map(|o| {
            let c = w.objects.comps(o);
            let (z, gamma, alpha) = (c[0], m.arrows[c[1]], c[2]);
            pair(z, in_m(h.compose(h.inv(alpha), gamma)))
        })
        .collect();
    let zeta1 = (0..wg.n_arr())
        .map(|a| realization.arrow(w.arrows.comp(a, 0), zeta0[wg.t(a)]).expect("ζ arrow"))
        .collect();
    let zeta = GroupoidHom::new(wg.clone(), rg.clone(), zeta0, zeta1)?;

    let psi_obj = |e: usize| {
        let (z, gamma) = (pulled.pairs.comp(e, 0), m.arrows[pulled.pairs.comp(e, 1)]);
        let one = in_m(h.unit(h.s(gamma)));
        (z, one, h.inv(gamma))
    };
    let psi0 = (0..rg.n_obj())
        .map(|e| {
            let (z, one, r) = psi_obj(e);
            w.object(z, one, r).expect("ψ object")
        })
        .collect();
    let psi1 = (0..rg.n_arr())
        .map(|a| {
            let (gg, _) = realization.parts(a);
            let (_, one, r) = psi_obj(rg.s(a));
            let v = upstairs.arrow(m.arrows[one], one).expect("unit of H⋉m_U");
            w.arrow(gg, v, r).expect("ψ arrow")
        })
        .collect();
    let psi = GroupoidHom::new(rg.clone(), wg.clone(), psi0, psi1)?;

    let omega = NatTrans::new(
        GroupoidHom::identity(wg),
        zeta.then(&psi)?,
        (0..wg.n_obj())
            .map(|o| {
                let c = w.objects.comps(o);
                let (z, gamma, alpha) = (c[0], m.arrows[c[1]], c[2]);
                let one = in_m(h.unit(h.s(gamma)));
                let v = upstairs.arrow(h.inv(gamma), one).expect("ω upstairs arrow");
                w.arrow(g.unit(z), v, alpha).expect("ω arrow")
            })
            .collect(),
    )?;
    let eta = omega.inverse();
    let eps = NatTrans::identity(&GroupoidHom::identity(rg));
    let package = EquivalencePackage::new(zeta.clone(), psi.clone(), eta.clone(), eps.clone())?;
    let over_w = OverGroupoid::new(w.pr1.clone());
    let fwd = SliceCell::strict(over_w.clone(), realization.over.clone(), zeta)?;
    let bwd = SliceCell::strict(realization.over.clone(), over_w.clone(), psi)?;
    let over = OverPackage {
        eta: SliceTwoCell::new(fwd.then(&bwd)?, SliceCell::identity(&over_w), eta)?,
        eps: SliceTwoCell::new(bwd.then(&fwd)?, SliceCell::identity(&realization.over), eps)?,
        forward: fwd,
        backward: bwd,
    };
    let package = package.with_over(over)?;
    Ok(InverseImage { pullback: w, pulled, realization, package })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fintop::FinSpace;
    use crate::group::FinGroup;
    use crate::point::Point;

    fn pt() -> Arc<FinGroupoid> {
        let p = Arc::new(FinSpace::discrete(vec![Point::atom("*")]).unwrap());
        Arc::new(FinGroupoid::unit_groupoid(&p))
    }

    #[test]
    fn epsilon_witness_for_the_collapse_of_pt_z2() {
        let g = Arc::new(FinGroupoid::delooping(&FinGroup::cyclic(2)));
        let iota = GroupoidHom::new(g.clone(), pt(), vec![0], vec![0, 0]).unwrap();
        let w = epsilon_witness(&OverGroupoid::new(iota)).unwrap();
        assert_eq!(w.realization.groupoid().n_arr(), 2);
        assert!(w.package.forward.is_isomorphism());
    }

    #[test]
    fn representable_of_pt_z2_realizes_to_a_point() {
        let h = Arc::new(FinGroupoid::delooping(&FinGroup::cyclic(2)));
        let r = realize_representable(&h, &h.obj().whole()).unwrap();
        assert!(r.morita.is_equivalence());
        assert!(r.package.over.is_some());
    }

    #[test]
    fn inverse_image_along_the_identity() {
        let h = Arc::new(FinGroupoid::delooping(&FinGroup::cyclic(2)));
        let ii = inverse_image_compat(&GroupoidHom::identity(&h), &h.obj().whole()).unwrap();
        assert_eq!(ii.realization.groupoid().n_obj(), 2);
        assert!(ii.package.eps.is_identity());
    }
}
