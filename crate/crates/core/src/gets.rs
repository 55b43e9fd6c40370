//! Gerbed effective étale groupoids: pairs `(X, σ)` with `X` effective and
//! `σ: G → X` an effective local equivalence, and the maps between them.
//!
//! Pullbacks `f*τ` are weak pullbacks with objects `(x, z, r: f x → τ z)`,
//! viewed over `X` through `pr1`.

use std::sync::Arc;

use crate::effective::{ef_on_hom, ef_on_nat, effective_part, factor_through_effective, is_effective};
use crate::error::{Error, Result};
use crate::gerbe::is_effective_local_equivalence;
use crate::groupoid::{
    is_morita_equivalence, weak_pullback, EquivalencePackage, FinGroupoid, GroupoidHom, MoritaCertificate, NatTrans,
    OverGroupoid, SliceCell, SliceTwoCell, WeakPullback,
};

#[derive(Clone, Debug)]
pub struct GerbedObject {
    pub base: Arc<FinGroupoid>,
    pub sigma: OverGroupoid,
}

impl GerbedObject {
    pub fn new(sigma: OverGroupoid) -> Result<GerbedObject> {
        const G: &str = "GerbedObject";
        let base = sigma.base().clone();
        if !is_effective(&base)?.effective {
            return Err(Error::invalid(G, "effective base", "base groupoid has parallel arrows with equal germs"));
        }
        if !is_effective_local_equivalence(sigma.structure())? {
            return Err(Error::invalid(G, "effective local equivalence", "σ is not an effective local equivalence"));
        }
        Ok(GerbedObject { base, sigma })
    }

    pub fn total(&self) -> &Arc<FinGroupoid> {
        self.sigma.total()
    }
}

/// `f*τ` as a groupoid over the domain of `f`.
#[derive(Clone, Debug)]
pub struct PulledBackGerbe {
    pub pullback: WeakPullback,
    pub over: OverGroupoid,
}

pub fn pullback_gerbe(f: &GroupoidHom, tau: &OverGroupoid) -> Result<PulledBackGerbe> {
    if **f.cod() != **tau.base() {
        return Err(Error::Mismatch("f does not land in the base of τ".into()));
    }
    let pullback = weak_pullback(f, tau.structure())?;
    let over = OverGroupoid::new(pullback.pr1.clone());
    Ok(PulledBackGerbe { pullback, over })
}

/// `α*: f'*τ → f*τ` for `α: f ⇒ f'`, `(x, z, r) ↦ (x, z, r∘α(x))`.
pub fn alpha_star(alpha: &NatTrans, tau: &OverGroupoid) -> Result<SliceCell> {
    let from = pullback_gerbe(alpha.dst(), tau)?;
    let to = pullback_gerbe(alpha.src(), tau)?;
    let w = &from.pullback;
    let omega = alpha.pre(&w.pr1)?.vertical(&w.cell)?;
    let map = to.pullback.induced(&w.pr1, &w.pr2, &omega)?;
    SliceCell::strict(from.over, to.over, map)
}

/// `f*(n): f*τ → f*τ'` for a cell `n: τ → τ'` over the codomain of `f`,
/// `(x, z, r) ↦ (x, n z, β_n(z)∘r)`.
pub fn pullback_cell(f: &GroupoidHom, n: &SliceCell) -> Result<SliceCell> {
    let from = pullback_gerbe(f, n.src())?;
    let to = pullback_gerbe(f, n.dst())?;
    let w = &from.pullback;
    let omega = w.cell.vertical(&n.alpha().pre(&w.pr2)?)?;
    let map = to.pullback.induced(&w.pr1, &w.pr2.then(n.map())?, &omega)?;
    SliceCell::strict(from.over, to.over, map)
}

/// `χ_{g,f}: f*g*ρ → (gf)*ρ`, `(x, (y, q, r), s) ↦ (x, q, r∘g(s))`.
pub fn chi(f: &GroupoidHom, g: &GroupoidHom, rho: &OverGroupoid) -> Result<SliceCell> {
    let inner = pullback_gerbe(g, rho)?;
    let from = pullback_gerbe(f, &inner.over)?;
    let to = pullback_gerbe(&f.then(g)?, rho)?;
    let (v, w) = (&inner.pullback, &from.pullback);
    let omega = w.cell.post(g)?.vertical(&v.cell.pre(&w.pr2)?)?;
    let map = to.pullback.induced(&w.pr1, &w.pr2.then(&v.pr2)?, &omega)?;
    SliceCell::strict(from.over, to.over, map)
}

/// `(f, m)` with `m: σ → f*τ` over the source base.
#[derive(Clone, Debug)]
pub struct GerbedMap {
    pub src: GerbedObject,
    pub dst: GerbedObject,
    pub f: GroupoidHom,
    pub m: SliceCell,
}

impl GerbedMap {
    pub fn new(src: &GerbedObject, dst: &GerbedObject, f: GroupoidHom, m: SliceCell) -> Result<GerbedMap> {
        const M: &str = "GerbedMap";
        if **f.dom() != *src.base || **f.cod() != *dst.base {
            return Err(Error::invalid(M, "base map", "f does not run between the bases"));
        }
        if *m.src() != src.sigma {
            return Err(Error::invalid(M, "m source", "m must start at σ"));
        }
        if *m.dst() != pullback_gerbe(&f, &dst.sigma)?.over {
            return Err(Error::invalid(M, "m target", "m must land in f*τ"));
        }
        Ok(GerbedMap { src: src.clone(), dst: dst.clone(), f, m })
    }

    /// `(id, w ↦ (σ w, w, 1))`.
    pub fn identity(obj: &GerbedObject) -> Result<GerbedMap> {
        let id = GroupoidHom::identity(&obj.base);
        let pulled = pullback_gerbe(&id, &obj.sigma)?;
        let sigma = obj.sigma.structure();
        let map = pulled.pullback.induced(sigma, &GroupoidHom::identity(obj.total()), &NatTrans::identity(sigma))?;
        GerbedMap::new(obj, obj, id, SliceCell::strict(obj.sigma.clone(), pulled.over, map)?)
    }
}

/// `(g, n)∘(f, m) = (gf, χ_{g,f}∘f*(n)∘m)`.
pub fn compose_gerbed(second: &GerbedMap, first: &GerbedMap) -> Result<GerbedMap> {
    if first.dst.sigma != second.src.sigma {
        return Err(Error::Mismatch("gerbed maps are not composable".into()));
    }
    let m = first
        .m
        .then(&pullback_cell(&first.f, &second.m)?)?
        .then(&chi(&first.f, &second.f, &second.dst.sigma)?)?;
    GerbedMap::new(&first.src, &second.dst, first.f.then(&second.f)?, m)
}

/// `(α, α̃): (f, m) ⇒ (f', m')` with `α: f ⇒ f'` and `α̃: α*∘m' ⇒ m`.
#[derive(Clone, Debug)]
pub struct GerbedTwoCell {
    pub src: GerbedMap,
    pub dst: GerbedMap,
    pub alpha: NatTrans,
    pub tilde: SliceTwoCell,
}

impl GerbedTwoCell {
    pub fn new(src: &GerbedMap, dst: &GerbedMap, alpha: NatTrans, tilde: NatTrans) -> Result<GerbedTwoCell> {
        if *alpha.src() != src.f || *alpha.dst() != dst.f {
            return Err(Error::invalid("GerbedTwoCell", "alpha endpoints", "α must run f ⇒ f'"));
        }
        let moved = dst.m.then(&alpha_star(&alpha, &dst.dst.sigma)?)?;
        let tilde = SliceTwoCell::new(moved, src.m.clone(), tilde)?;
        Ok(GerbedTwoCell { src: src.clone(), dst: dst.clone(), alpha, tilde })
    }
}

/// `β⋆α` with components `β(f' x)∘g(α x)`.
pub fn whisker_compose(beta: &NatTrans, alpha: &NatTrans) -> Result<NatTrans> {
    let (g, g2) = (beta.src(), beta.dst());
    let z = g.cod();
    let comp = (0..alpha.src().dom().n_obj())
        .map(|x| z.compose(beta.at(alpha.dst().f0(x)), g.f1(alpha.at(x))))
        .collect();
    NatTrans::new(alpha.src().then(g)?, alpha.dst().then(g2)?, comp)
}

/// Horizontal composite of `outer: (g, n) ⇒ (g', n')` after `inner: (f, m) ⇒ (f', m')`.
///
/// At `w`, with `ã(w) = (u, v)` and `b̃` the outer cell, the component is
/// `(u, b̃_ρ(z)∘n'(v)_ρ)` where `z = pr2 m(w)` and `(·)_ρ` takes the arrow of `ρ`.
pub fn horizontal(outer: &GerbedTwoCell, inner: &GerbedTwoCell) -> Result<GerbedTwoCell> {
    let src = compose_gerbed(&outer.src, &inner.src)?;
    let dst = compose_gerbed(&outer.dst, &inner.dst)?;
    let alpha = whisker_compose(&outer.alpha, &inner.alpha)?;
    let f_tau = pullback_gerbe(&inner.src.f, &inner.src.dst.sigma)?;
    let g_rho = pullback_gerbe(&outer.src.f, &outer.src.dst.sigma)?;
    let g2_rho = pullback_gerbe(&outer.dst.f, &outer.dst.dst.sigma)?;
    let target = pullback_gerbe(&src.f, &src.dst.sigma)?;
    let moved = dst.m.then(&alpha_star(&alpha, &dst.dst.sigma)?)?;
    let (t, r) = (&target.pullback, outer.src.dst.sigma.total());
    let sigma_total = inner.src.src.total();
    let comp = (0..sigma_total.n_obj())
        .map(|w| {
            let a = f_tau.pullback.arrows.comps(inner.tilde.omega().at(w));
            let (u, v) = (a[0], a[1]);
            let z = f_tau.pullback.objects.comp(inner.src.m.map().f0(w), 1);
            let moved_v = g2_rho.pullback.arrows.comp(outer.dst.m.map().f1(v), 1);
            let b = g_rho.pullback.arrows.comp(outer.tilde.omega().at(z), 1);
            let r_src = t.objects.comp(moved.map().f0(w), 2);
            t.arrow(u, r.compose(b, moved_v), r_src)
                .ok_or_else(|| Error::invalid("horizontal composite", "pasting", format!("object {w}")))
        })
        .collect::<Result<Vec<_>>>()?;
    GerbedTwoCell::new(&src, &dst, alpha, NatTrans::new(moved.map().clone(), src.m.map().clone(), comp)?)
}

/// `χ_{g,f}∘f*(β*) = (βf)*∘χ_{g',f}` as maps `f*g'*ρ → (gf)*ρ`.
pub fn chi_naturality(f: &GroupoidHom, beta: &NatTrans, rho: &OverGroupoid) -> Result<bool> {
    let left = pullback_cell(f, &alpha_star(beta, rho)?)?.then(&chi(f, beta.src(), rho)?)?;
    let right = chi(f, beta.dst(), rho)?.then(&alpha_star(&beta.pre(f)?, rho)?)?;
    Ok(left == right)
}

/// `Θ(G) = (Ef G, ι_G)`.
pub fn theta(g: &Arc<FinGroupoid>) -> Result<GerbedObject> {
    GerbedObject::new(OverGroupoid::new(effective_part(g)?.iota))
}

/// `Θ(φ) = (Ef φ, w ↦ (ι w, φ w, 1))`.
pub fn theta_on_map(phi: &GroupoidHom) -> Result<GerbedMap> {
    let (src_ef, dst_ef) = (effective_part(phi.dom())?, effective_part(phi.cod())?);
    let src = GerbedObject::new(OverGroupoid::new(src_ef.iota.clone()))?;
    let dst = GerbedObject::new(OverGroupoid::new(dst_ef.iota.clone()))?;
    let f = ef_on_hom(phi, &src_ef, &dst_ef)?;
    let pulled = pullback_gerbe(&f, &dst.sigma)?;
    let cone = phi.then(&dst_ef.iota)?;
    let map = pulled.pullback.induced(&src_ef.iota, phi, &NatTrans::identity(&cone))?;
    GerbedMap::new(&src, &dst, f, SliceCell::strict(src.sigma.clone(), pulled.over, map)?)
}

/// `Θ(α) = (Ef α, α̃)` with `α̃(x) = (1, α(x)^{-1})`.
pub fn theta_on_2cell(alpha: &NatTrans) -> Result<GerbedTwoCell> {
    let src = theta_on_map(alpha.src())?;
    let dst = theta_on_map(alpha.dst())?;
    let cod_ef = effective_part(alpha.src().cod())?;
    let ef_alpha = ef_on_nat(alpha, &src.f, &dst.f, &cod_ef)?;
    let moved = dst.m.then(&alpha_star(&ef_alpha, &dst.dst.sigma)?)?;
    let pulled = pullback_gerbe(&src.f, &src.dst.sigma)?;
    let (g, h) = (alpha.src().dom(), alpha.src().cod());
    let ef_g = src.src.base.clone();
    let comp = (0..g.n_obj())
        .map(|x| {
            let r = pulled.pullback.objects.comp(moved.map().f0(x), 2);
            pulled.pullback.arrow(ef_g.unit(x), h.inv(alpha.at(x)), r).expect("α̃ component")
        })
        .collect();
    GerbedTwoCell::new(&src, &dst, ef_alpha, NatTrans::new(moved.map().clone(), src.m.map().clone(), comp)?)
}

pub fn xi(obj: &GerbedObject) -> Arc<FinGroupoid> {
    obj.total().clone()
}

/// `Ξ(f, m) = pr2∘m`.
pub fn xi_on_map(map: &GerbedMap) -> Result<GroupoidHom> {
    map.m.map().then(&pullback_gerbe(&map.f, &map.dst.sigma)?.pullback.pr2)
}

/// The inverse of `pr2∘α̃`, a transformation `Ξ(f, m) ⇒ Ξ(f', m')`.
pub fn xi_on_2cell(cell: &GerbedTwoCell) -> Result<NatTrans> {
    let pr2 = pullback_gerbe(&cell.src.f, &cell.src.dst.sigma)?.pullback.pr2;
    Ok(cell.tilde.omega().post(&pr2)?.inverse())
}

/// The gerbed map `Θ(Ξ(X, σ)) → (X, σ)`: `Ef(σ)` on bases with
/// `w ↦ (w, w, 1)`, and the equivalence between the totals it induces.
#[derive(Clone, Debug)]
pub struct ThetaXi {
    pub theta_xi: GerbedObject,
    pub map: GerbedMap,
    /// Morita test of `Ef(σ): Ef(G) → X`.
    pub base: MoritaCertificate,
    /// `m: G → Ef(σ)*σ` with backward `pr2`.
    pub total: EquivalencePackage,
}

pub fn theta_xi_comparison(obj: &GerbedObject) -> Result<ThetaXi> {
    let g = obj.total();
    let ef = effective_part(g)?;
    let sigma = obj.sigma.structure();
    let f = factor_through_effective(sigma, &ef)?;
    let theta_xi = GerbedObject::new(OverGroupoid::new(ef.iota.clone()))?;
    let pulled = pullback_gerbe(&f, &obj.sigma)?;
    let w = &pulled.pullback;
    let m = w.induced(&ef.iota, &GroupoidHom::identity(g), &NatTrans::identity(sigma))?;
    let base = is_morita_equivalence(&f);
    let x = &obj.base;
    let eps = (0..w.groupoid.n_obj())
        .map(|o| {
            let c = w.objects.comps(o);
            let (y, z, r) = (c[0], c[1], c[2]);
            let u = ef
                .groupoid
                .hom(z, y)
                .into_iter()
                .find(|&u| f.f1(u) == x.inv(r))
                .ok_or_else(|| Error::invalid("Θ∘Ξ", "Ef(σ) full", format!("object {o}")))?;
            w.arrow(u, g.unit(z), x.unit(sigma.f0(z)))
                .ok_or_else(|| Error::invalid("Θ∘Ξ", "counit arrow", format!("object {o}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let total = EquivalencePackage::new(
        m.clone(),
        w.pr2.clone(),
        NatTrans::identity(&GroupoidHom::identity(g)),
        NatTrans::new(w.pr2.then(&m)?, GroupoidHom::identity(&w.groupoid), eps)?,
    )?;
    let map = GerbedMap::new(&theta_xi, obj, f, SliceCell::strict(theta_xi.sigma.clone(), pulled.over, m)?)?;
    Ok(ThetaXi { theta_xi, map, base, total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FinGroup;

    fn ptz2() -> Arc<FinGroupoid> {
        Arc::new(FinGroupoid::delooping(&FinGroup::cyclic(2)))
    }

    #[test]
    fn theta_then_xi_is_the_identity() {
        let g = ptz2();
        let obj = theta(&g).unwrap();
        assert_eq!(obj.base.n_arr(), 1);
        assert_eq!(*xi(&obj), *g);
        let id = GroupoidHom::identity(&g);
        assert_eq!(xi_on_map(&theta_on_map(&id).unwrap()).unwrap(), id);
        let twist = NatTrans::new(id.clone(), id.clone(), vec![1]).unwrap();
        assert_eq!(xi_on_2cell(&theta_on_2cell(&twist).unwrap()).unwrap(), twist);
    }

    #[test]
    fn identity_gerbed_map_is_a_unit_for_composition() {
        let obj = theta(&ptz2()).unwrap();
        let id = GerbedMap::identity(&obj).unwrap();
        let comp = compose_gerbed(&id, &id).unwrap();
        assert_eq!(comp.m, id.m);
        let cmp = theta_xi_comparison(&obj).unwrap();
        assert!(cmp.base.is_equivalence());
    }
}
