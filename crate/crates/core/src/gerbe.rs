//! Bouquets and gerbes over étale groupoids.

use std::sync::Arc;

use crate::action::{action_groupoid, epsilon_witness, p_functor, theta_prime, ActionGroupoid, EpsilonWitness};
use crate::effective::{
    effective_part, ef_on_hom, factor_through_effective, ineffective_isotropy, is_effective, EffectivePart,
};
use crate::equivariant::{stalk, GroupoidObject};
use crate::error::{Error, Result};
use crate::fintop::FinSpace;
use crate::group::FinGroup;
use crate::groupoid::{is_morita_equivalence, weak_pullback, CechGroupoid, FinGroupoid, GroupoidHom, OverGroupoid};

/// The two surjectivity conditions of a bouquet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BouquetCheck {
    pub moment_surjective: bool,
    pub pairs_surjective: bool,
    /// A point of `H0` or a pair in `B0 ×_{H0} B0` that is missed.
    pub missing: Option<String>,
}

impl BouquetCheck {
    pub fn is_bouquet(&self) -> bool {
        self.moment_surjective && self.pairs_surjective
    }
}

pub fn is_bouquet(k: &GroupoidObject) -> BouquetCheck {
    let h = k.base();
    let inner = k.inner();
    let mu = k.k0();
    let mut missing = None;
    let moment_surjective = match (0..h.n_obj()).find(|&x| mu.fiber(x).is_empty()) {
        Some(x) => {
            missing = Some(format!("no object over {}", h.obj().point(x)));
            false
        }
        None => true,
    };
    let mut pairs_surjective = true;
    'outer: for a in 0..inner.n_obj() {
        for b in 0..inner.n_obj() {
            if mu.moment(a) == mu.moment(b) && inner.hom(a, b).is_empty() {
                pairs_surjective = false;
                if missing.is_none() {
                    missing = Some(format!("no arrow {} → {}", inner.obj().point(a), inner.obj().point(b)));
                }
                break 'outer;
            }
        }
    }
    BouquetCheck { moment_surjective, pairs_surjective, missing }
}

/// Every stalk is nonempty and connected.
pub fn is_gerbe_stalkwise(k: &GroupoidObject) -> Result<bool> {
    for x in 0..k.base().n_obj() {
        let st = stalk(k, x)?;
        if st.groupoid.n_obj() == 0 || st.groupoid.components().len() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_full(phi: &GroupoidHom) -> bool {
    phi.is_full()
}

fn require_effective_bouquet(h: &Arc<FinGroupoid>, b: &GroupoidObject) -> Result<()> {
    if **b.base() != **h {
        return Err(Error::Mismatch("bouquet lives over a different groupoid".into()));
    }
    if !is_effective(h)?.effective {
        return Err(Error::Precondition("base groupoid is not effective".into()));
    }
    let check = is_bouquet(b);
    if !check.is_bouquet() {
        return Err(Error::Precondition(format!("not a bouquet: {}", check.missing.unwrap_or_default())));
    }
    Ok(())
}

/// `κ: H_{μ0} → Ef(H⋉B)` and its inverse induced by `θ'`.
#[derive(Clone, Debug)]
pub struct EfRealization {
    pub realization: ActionGroupoid,
    pub effective: EffectivePart,
    pub cech: CechGroupoid,
    pub kappa: GroupoidHom,
    pub inverse: GroupoidHom,
}

impl EfRealization {
    pub fn is_isomorphism(&self) -> bool {
        let id_c = GroupoidHom::identity(&self.cech.groupoid);
        let id_e = GroupoidHom::identity(&self.effective.groupoid);
        self.kappa.then(&self.inverse).map(|c| c == id_c).unwrap_or(false)
            && self.inverse.then(&self.kappa).map(|c| c == id_e).unwrap_or(false)
    }
}

/// `κ(h, x, y) = [(h, γ)]` for any `γ: h·x → y`.
pub fn ef_of_realization(h: &Arc<FinGroupoid>, b: &GroupoidObject) -> Result<EfRealization> {
    require_effective_bouquet(h, b)?;
    let realization = action_groupoid(b)?;
    let tp = theta_prime(&realization)?;
    let effective = effective_part(realization.groupoid())?;
    let inverse = factor_through_effective(&tp.map, &effective)?;
    let cech = tp.cech;
    let inner = b.inner();
    let c = &cech.groupoid;
    let f1 = (0..c.n_arr())
        .map(|a| {
            let t = cech.arrows.comps(a);
            let (arrow, x, y) = (t[0], t[1], t[2]);
            let gamma = inner.hom(b.k0().act(arrow, x), y)[0];
            effective.class_of(realization.arrow(arrow, gamma).expect("action arrow"))
        })
        .collect();
    let kappa = GroupoidHom::new(c.clone(), effective.groupoid.clone(), (0..c.n_obj()).collect(), f1)?;
    Ok(EfRealization { realization, effective, cech, kappa, inverse })
}

/// `P(ι_G)` over `Ef(G)` together with the equivalence back to `G`.
#[derive(Clone, Debug)]
pub struct GerbeFromIneffective {
    pub effective: EffectivePart,
    pub bouquet: BouquetCheck,
    pub witness: EpsilonWitness,
}

impl GerbeFromIneffective {
    pub fn object(&self) -> &GroupoidObject {
        &self.witness.p.object
    }
}

pub fn gerbe_from_ineffective(g: &Arc<FinGroupoid>) -> Result<GerbeFromIneffective> {
    let effective = effective_part(g)?;
    let witness = epsilon_witness(&OverGroupoid::new(effective.iota.clone()))?;
    let bouquet = is_bouquet(&witness.p.object);
    Ok(GerbeFromIneffective { effective, bouquet, witness })
}

/// The three gerbe conditions for `ρ: G → K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// `P(ρ)` is a bouquet over `K`.
    pub gerbe_over_target: bool,
    /// `P(ι_K∘ρ)` is a bouquet over `Ef(K)`.
    pub gerbe_over_effective: bool,
    pub full: bool,
    /// Étale components with `Ef(ρ)` a Morita equivalence; only when `K` is effective.
    pub effective_local_equivalence: Option<bool>,
}

impl Decomposition {
    pub fn consistent(&self) -> bool {
        self.gerbe_over_target == (self.gerbe_over_effective && self.full)
            && self.effective_local_equivalence.map_or(true, |e| e == self.gerbe_over_target)
    }
}

pub fn gerbe_decomposition_check(rho: &GroupoidHom) -> Result<Decomposition> {
    let k = rho.cod();
    let over_k = p_functor(&OverGroupoid::new(rho.clone()))?;
    let ef_k = effective_part(k)?;
    let over_ef = p_functor(&OverGroupoid::new(rho.then(&ef_k.iota)?))?;
    let effective_local_equivalence = if is_effective(k)?.effective {
        Some(is_effective_local_equivalence(rho)?)
    } else {
        None
    };
    Ok(Decomposition {
        gerbe_over_target: is_bouquet(&over_k.object).is_bouquet(),
        gerbe_over_effective: is_bouquet(&over_ef.object).is_bouquet(),
        full: rho.is_full(),
        effective_local_equivalence,
    })
}

/// Both components étale and `Ef(ρ)` a Morita equivalence.
pub fn is_effective_local_equivalence(rho: &GroupoidHom) -> Result<bool> {
    if !rho.has_etale_components() {
        return Ok(false);
    }
    let src = effective_part(rho.dom())?;
    let dst = effective_part(rho.cod())?;
    let ef = ef_on_hom(rho, &src, &dst)?;
    Ok(is_morita_equivalence(&ef).is_equivalence())
}

/// Three groups that should agree at `x̃ ∈ B0`.
#[derive(Clone, Debug)]
pub struct IsotropyComparison {
    /// Isotropy of the underlying groupoid of `B` at `x̃`.
    pub bouquet: FinGroup,
    /// Ineffective isotropy of `H⋉B` at `x̃`.
    pub ineffective: FinGroup,
    /// Isotropy of the fiber of `θ'` over `x̃`.
    pub fiber: FinGroup,
}

impl IsotropyComparison {
    pub fn all_isomorphic(&self) -> bool {
        self.bouquet.is_isomorphic(&self.ineffective) && self.bouquet.is_isomorphic(&self.fiber)
    }
}

pub fn stalk_vs_ineffective_isotropy(h: &Arc<FinGroupoid>, b: &GroupoidObject, x: usize) -> Result<IsotropyComparison> {
    require_effective_bouquet(h, b)?;
    if x >= b.inner().n_obj() {
        return Err(Error::Precondition(format!("no object {x} in the bouquet")));
    }
    let realization = action_groupoid(b)?;
    let tp = theta_prime(&realization)?;
    let pt = Arc::new(FinGroupoid::unit_groupoid(&Arc::new(FinSpace::singleton())));
    let c = &tp.cech.groupoid;
    let pick = GroupoidHom::new(pt, c.clone(), vec![x], vec![c.unit(x)])?;
    let wp = weak_pullback(&pick, &tp.map)?;
    let base_obj = wp.object(0, x, c.unit(x)).expect("fiber object");
    Ok(IsotropyComparison {
        bouquet: b.inner().isotropy_group(x),
        ineffective: ineffective_isotropy(realization.groupoid(), x)?,
        fiber: wp.groupoid.isotropy_group(base_obj),
    })
}
