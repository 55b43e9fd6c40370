//! Germs of étale groupoids: the Haefliger groupoid, the comparison `ι̃`,
//! effective parts and ineffective isotropy.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fintop::{CMap, FinSpace, Germ};
use crate::group::FinGroup;
use crate::groupoid::{cech_groupoid, FinGroupoid, GroupoidHom, GroupoidParts, NatTrans};

/// `Ha(X)`: all germs of X, with `germ_z(f) ≤ germ_x(f)` for `z ≤ x`.
#[derive(Clone, Debug)]
pub struct Haefliger {
    pub groupoid: Arc<FinGroupoid>,
    pub germs: Vec<Germ>,
    index: HashMap<Germ, usize>,
}

impl Haefliger {
    pub fn index_of(&self, g: &Germ) -> Option<usize> {
        self.index.get(g).copied()
    }
}

pub fn haefliger(x: &Arc<FinSpace>) -> Result<Haefliger> {
    let all: Vec<Germ> =
        (0..x.len()).flat_map(|a| (0..x.len()).flat_map(move |b| crate::fintop::germs_between(x, a, b))).collect();
    let (groupoid, germs) = germ_groupoid(x, all)?;
    let index = germs.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
    Ok(Haefliger { groupoid, germs, index })
}

/// The groupoid on `X` whose arrows are the given germs, closed under
/// restriction, with the restriction order. Returns the germs in arrow order.
fn germ_groupoid(x: &Arc<FinSpace>, germs: Vec<Germ>) -> Result<(Arc<FinGroupoid>, Vec<Germ>)> {
    let points = germs.iter().map(|g| g.to_point(x)).collect();
    let index: HashMap<&Germ, usize> = germs.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut pairs = Vec::new();
    for (i, g) in germs.iter().enumerate() {
        for &z in x.down(g.base) {
            let r = g.restrict(x, z);
            let j = *index.get(&r).ok_or_else(|| Error::Precondition("germ set not closed under restriction".into()))?;
            pairs.push((j, i));
        }
    }
    let (arr, perm) = FinSpace::from_relation(points, &pairs)?;
    let mut sorted = vec![None; germs.len()];
    for (i, g) in germs.into_iter().enumerate() {
        sorted[perm[i]] = Some(g);
    }
    let germs: Vec<Germ> = sorted.into_iter().map(|g| g.expect("permutation")).collect();
    let index: HashMap<&Germ, usize> = germs.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let find = |g: &Germ| index.get(g).copied();
    let unit = (0..x.len())
        .map(|p| find(&Germ::identity(x, p)).ok_or_else(|| Error::Precondition("identity germ missing".into())))
        .collect::<Result<Vec<_>>>()?;
    let inv = germs
        .iter()
        .map(|g| find(&g.inverse()).ok_or_else(|| Error::Precondition("inverse germ missing".into())))
        .collect::<Result<Vec<_>>>()?;
    let groupoid = FinGroupoid::new(GroupoidParts {
        obj: x.clone(),
        arr: Arc::new(arr),
        src: germs.iter().map(|g| g.base).collect(),
        tgt: germs.iter().map(|g| g.target).collect(),
        unit,
        inv,
        comp: |a: usize, b: usize| find(&germs[a].after(&germs[b])),
    })?;
    Ok((Arc::new(groupoid), germs))
}

/// The germ at `s(a)` of `t∘s^{-1}` on the minimal open of `a`.
pub fn germ_of_arrow(h: &FinGroupoid, a: usize) -> Result<Germ> {
    let arr = h.arr();
    let pairs: Option<Vec<(usize, usize)>> = {
        let mut by_source: Vec<(usize, usize)> = arr.down(a).iter().map(|&b| (h.s(b), h.t(b))).collect();
        by_source.sort_unstable();
        let src = h.obj().down(h.s(a));
        (by_source.len() == src.len() && by_source.iter().map(|p| p.0).eq(src.iter().copied())).then_some(by_source)
    };
    let pairs = pairs.ok_or_else(|| {
        Error::Precondition(format!("source map is not a local homeomorphism at {}", arr.point(a)))
    })?;
    let germ = Germ { base: h.s(a), target: h.t(a), pairs };
    if !germ.is_valid(h.obj()) {
        return Err(Error::Precondition(format!("t∘s^-1 is not a local homeomorphism at {}", arr.point(a))));
    }
    Ok(germ)
}

#[derive(Clone, Debug)]
pub struct IotaTilde {
    pub haefliger: Haefliger,
    pub map: GroupoidHom,
}

/// `ι̃: H → Ha(H0)`, the identity on objects.
pub fn iota_tilde(h: &Arc<FinGroupoid>) -> Result<IotaTilde> {
    require_etale(h)?;
    let ha = haefliger(h.obj())?;
    let f1 = (0..h.n_arr())
        .map(|a| Ok(ha.index_of(&germ_of_arrow(h, a)?).expect("every germ is in Ha")))
        .collect::<Result<Vec<_>>>()?;
    let map = GroupoidHom::new(h.clone(), ha.groupoid.clone(), (0..h.n_obj()).collect(), f1)?;
    Ok(IotaTilde { haefliger: ha, map })
}

fn require_etale(h: &FinGroupoid) -> Result<()> {
    if h.is_etale() {
        Ok(())
    } else {
        Err(Error::Precondition("groupoid is not étale".into()))
    }
}

/// `Ef(H)` with `ι_H: H → Ef(H)`.
#[derive(Clone, Debug)]
pub struct EffectivePart {
    pub groupoid: Arc<FinGroupoid>,
    pub iota: GroupoidHom,
    /// The germ of each arrow of `Ef(H)`.
    pub germs: Vec<Germ>,
    /// The subspace order from `Ha(H0)` equals the quotient order from `H1`.
    pub topologies_agree: bool,
}

impl EffectivePart {
    pub fn class_of(&self, a: usize) -> usize {
        self.iota.f1(a)
    }
}

pub fn effective_part(h: &Arc<FinGroupoid>) -> Result<EffectivePart> {
    require_etale(h)?;
    let raw: Vec<Germ> = (0..h.n_arr()).map(|a| germ_of_arrow(h, a)).collect::<Result<_>>()?;
    let mut distinct = raw.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let (groupoid, germs) = germ_groupoid(h.obj(), distinct)?;
    let index: HashMap<&Germ, usize> = germs.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let class: Vec<usize> = raw.iter().map(|g| index[g]).collect();
    let iota = GroupoidHom::new(h.clone(), groupoid.clone(), (0..h.n_obj()).collect(), class.clone())?;
    let names = germs.iter().map(|g| g.to_point(h.obj())).collect();
    let (quotient, perm) = h.arr().quotient(&class, names)?;
    let arr = groupoid.arr();
    let topologies_agree = perm.iter().enumerate().all(|(i, &j)| i == j)
        && (0..arr.len()).all(|a| (0..arr.len()).all(|b| arr.leq(a, b) == quotient.leq(a, b)));
    Ok(EffectivePart { groupoid, iota, germs, topologies_agree })
}

/// Two distinct parallel arrows with the same germ, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Effectiveness {
    pub effective: bool,
    pub witness: Option<(usize, usize)>,
}

pub fn is_effective(h: &Arc<FinGroupoid>) -> Result<Effectiveness> {
    require_etale(h)?;
    let mut seen: HashMap<Germ, usize> = HashMap::new();
    for a in 0..h.n_arr() {
        let g = germ_of_arrow(h, a)?;
        if let Some(&b) = seen.get(&g) {
            return Ok(Effectiveness { effective: false, witness: Some((b, a)) });
        }
        seen.insert(g, a);
    }
    Ok(Effectiveness { effective: true, witness: None })
}

/// Kernel of `H_x → Diff_x(H0)`: isotropy arrows at `x` with identity germ.
pub fn ineffective_isotropy(h: &Arc<FinGroupoid>, x: usize) -> Result<FinGroup> {
    require_etale(h)?;
    let mut members = Vec::new();
    for a in h.isotropy(x) {
        if germ_of_arrow(h, a)?.is_identity() {
            members.push(a);
        }
    }
    Ok(h.subgroup_at(x, &members))
}

/// `Ef(φ)[g] = [φ(g)]`, for homs whose components are open maps.
pub fn ef_on_hom(phi: &GroupoidHom, src: &EffectivePart, dst: &EffectivePart) -> Result<GroupoidHom> {
    if let Some(p) = phi.obj_map().open_map_failure() {
        return Err(Error::NotOpen(format!("object map is not open at {}", phi.dom().obj().point(p))));
    }
    if let Some(p) = phi.arr_map().open_map_failure() {
        return Err(Error::NotOpen(format!("arrow map is not open at {}", phi.dom().arr().point(p))));
    }
    let g = phi.dom();
    let mut f1 = vec![usize::MAX; src.groupoid.n_arr()];
    for a in 0..g.n_arr() {
        let c = src.class_of(a);
        let image = dst.class_of(phi.f1(a));
        if f1[c] != usize::MAX && f1[c] != image {
            return Err(Error::invalid("Ef(φ)", "well-defined on germs", g.arr().point(a).to_string()));
        }
        f1[c] = image;
    }
    GroupoidHom::new(src.groupoid.clone(), dst.groupoid.clone(), phi.on_obj().to_vec(), f1)
}

/// `Ef(α)(x) = [α(x)]`.
pub fn ef_on_nat(alpha: &NatTrans, src: &GroupoidHom, dst: &GroupoidHom, cod: &EffectivePart) -> Result<NatTrans> {
    NatTrans::new(src.clone(), dst.clone(), alpha.components().iter().map(|&a| cod.class_of(a)).collect())
}

/// The unique `ψ: Ef(H) → G` with `ψ∘ι_H = φ`, when it exists.
pub fn factor_through_effective(phi: &GroupoidHom, ef: &EffectivePart) -> Result<GroupoidHom> {
    let g = phi.dom();
    let mut f1 = vec![usize::MAX; ef.groupoid.n_arr()];
    for a in 0..g.n_arr() {
        let c = ef.class_of(a);
        if f1[c] != usize::MAX && f1[c] != phi.f1(a) {
            return Err(Error::invalid("factorization", "constant on germ classes", g.arr().point(a).to_string()));
        }
        f1[c] = phi.f1(a);
    }
    GroupoidHom::new(ef.groupoid.clone(), phi.cod().clone(), phi.on_obj().to_vec(), f1)
}

/// The map `(h, p, q) ↦ ([h], p, q)` from `Ef(H_U)` to `(Ef H)_U`.
pub fn ef_cech_comparison(h: &Arc<FinGroupoid>, cover: &CMap) -> Result<GroupoidHom> {
    let ef = effective_part(h)?;
    let cech = cech_groupoid(h, cover)?;
    let ef_cech = effective_part(&cech.groupoid)?;
    let cech_ef = cech_groupoid(&ef.groupoid, cover)?;
    let c = &cech.groupoid;
    let mut f1 = vec![usize::MAX; ef_cech.groupoid.n_arr()];
    for a in 0..c.n_arr() {
        let t = cech.arrows.comps(a);
        let image = cech_ef.arrows.find(&[ef.class_of(t[0]), t[1], t[2]]).expect("Čech arrow of Ef");
        let k = ef_cech.class_of(a);
        if f1[k] != usize::MAX && f1[k] != image {
            return Err(Error::invalid("Ef(H_U) → (Ef H)_U", "well-defined", c.arr().point(a).to_string()));
        }
        f1[k] = image;
    }
    GroupoidHom::new(ef_cech.groupoid.clone(), cech_ef.groupoid.clone(), (0..c.n_obj()).collect(), f1)
}

/// Germ equality of two parallel arrows of `H⋉K` next to equality of their
/// images under `θ'`; the two agree when `H` is effective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SameGerm {
    pub same_germ: bool,
    pub same_theta_prime: bool,
}

pub fn same_germ_in_action_groupoid(
    h: &Arc<FinGroupoid>,
    k: &crate::equivariant::GroupoidObject,
    a1: usize,
    a2: usize,
) -> Result<SameGerm> {
    if !is_effective(h)?.effective {
        return Err(Error::Precondition("base groupoid is not effective".into()));
    }
    let ag = crate::action::action_groupoid(k)?;
    let g = ag.groupoid();
    if a1 >= g.n_arr() || a2 >= g.n_arr() || g.s(a1) != g.s(a2) || g.t(a1) != g.t(a2) {
        return Err(Error::Precondition("arrows must share source and target".into()));
    }
    let tp = crate::action::theta_prime(&ag)?;
    Ok(SameGerm {
        same_germ: germ_of_arrow(g, a1)? == germ_of_arrow(g, a2)?,
        same_theta_prime: tp.map.f1(a1) == tp.map.f1(a2),
    })
}
