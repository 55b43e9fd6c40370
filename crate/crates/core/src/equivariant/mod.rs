//! Spaces with a groupoid action, equivariant sheaves and groupoid objects
//! among them.
//!
//! An `H`-space has a moment map `μ: E → H0` and an action defined on pairs
//! `(h, e)` with `s(h) = μ(e)`; it is a sheaf when `μ` is étale.

mod homs;
mod object;
mod pullback;
mod site;
mod stalk;

pub use homs::{equivariant_maps, sections_over};
pub use object::{GroupoidObject, InternalFunctor, InternalNatTrans};
pub use pullback::{pullback_object, pullback_sheaf, PulledBackObject, PulledBackSheaf};
pub use site::{m_on_arrows, representable_sheaf, site_arrow_of_map, site_hom, Representable, SiteArrow};
pub use stalk::{fiber_groupoid, stalk, Stalk};

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fintop::{CMap, FinSpace};
use crate::groupoid::FinGroupoid;

#[derive(Clone)]
pub struct HSpace {
    base: Arc<FinGroupoid>,
    total: Arc<FinSpace>,
    moment: Vec<usize>,
    action: HashMap<(usize, usize), usize>,
}

impl PartialEq for HSpace {
    fn eq(&self, other: &HSpace) -> bool {
        self.moment == other.moment
            && self.action == other.action
            && *self.total == *other.total
            && *self.base == *other.base
    }
}

impl fmt::Debug for HSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HSpace({} points over {:?})", self.total.len(), self.base)
    }
}

const S: &str = "HSpace";

impl HSpace {
    /// `act(h, e)` is called for every pair with `s(h) = μ(e)`.
    pub fn new(
        base: Arc<FinGroupoid>,
        total: Arc<FinSpace>,
        moment: Vec<usize>,
        mut act: impl FnMut(usize, usize) -> Option<usize>,
    ) -> Result<HSpace> {
        if moment.len() != total.len() || moment.iter().any(|&x| x >= base.n_obj()) {
            return Err(Error::invalid(S, "shape", "moment map does not cover the total space"));
        }
        if CMap::new(total.clone(), base.obj().clone(), moment.clone()).is_err() {
            return Err(Error::invalid(S, "moment continuous", "moment map not monotone"));
        }
        let mut action = HashMap::new();
        for e in 0..total.len() {
            for &h in base.arrows_from(moment[e]) {
                let he = act(h, e).filter(|&x| x < total.len()).ok_or_else(|| {
                    Error::invalid(S, "action closed", format!("{}·{}", base.arr().point(h), total.point(e)))
                })?;
                action.insert((h, e), he);
            }
        }
        let space = HSpace { base, total, moment, action };
        space.validate()?;
        Ok(space)
    }

    fn validate(&self) -> Result<()> {
        let b = &self.base;
        let name = |h: usize, e: usize| format!("{}·{}", b.arr().point(h), self.total.point(e));
        for e in 0..self.total.len() {
            if self.act(b.unit(self.moment[e]), e) != e {
                return Err(Error::invalid(S, "1·e = e", self.total.point(e).to_string()));
            }
            for &h in b.arrows_from(self.moment[e]) {
                let he = self.act(h, e);
                if self.moment[he] != b.t(h) {
                    return Err(Error::invalid(S, "μ(h·e) = t(h)", name(h, e)));
                }
                for &g in b.arrows_from(b.t(h)) {
                    if self.act(b.compose(g, h), e) != self.act(g, he) {
                        return Err(Error::invalid(S, "(gh)·e = g·(h·e)", name(h, e)));
                    }
                }
            }
        }
        for e in 0..self.total.len() {
            for &h in b.arrows_from(self.moment[e]) {
                let he = self.act(h, e);
                for &e2 in self.total.down(e) {
                    for &h2 in b.arr().down(h) {
                        if b.s(h2) == self.moment[e2] && !self.total.leq(self.act(h2, e2), he) {
                            return Err(Error::invalid(S, "action continuous", name(h, e)));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &Arc<FinGroupoid> {
        &self.base
    }

    pub fn total(&self) -> &Arc<FinSpace> {
        &self.total
    }

    pub fn len(&self) -> usize {
        self.total.len()
    }

    pub fn is_empty(&self) -> bool {
        self.total.is_empty()
    }

    pub fn moment(&self, e: usize) -> usize {
        self.moment[e]
    }

    pub fn moment_table(&self) -> &[usize] {
        &self.moment
    }

    pub fn moment_map(&self) -> CMap {
        CMap::new_unchecked(self.total.clone(), self.base.obj().clone(), self.moment.clone())
    }

    /// `h·e`; panics unless `s(h) = μ(e)`.
    pub fn act(&self, h: usize, e: usize) -> usize {
        self.action[&(h, e)]
    }

    pub fn fiber(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&e| self.moment[e] == x).collect()
    }

    pub fn is_sheaf(&self) -> bool {
        self.moment_map().is_etale()
    }

    /// Orbit representatives: the least element of each orbit.
    pub fn orbit_representatives(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&e| self.base.arrows_from(self.moment[e]).iter().all(|&h| self.act(h, e) >= e))
            .collect()
    }
}

/// An `H`-space with étale moment map: an object of the classifying topos.
#[derive(Clone, PartialEq, Debug)]
pub struct EquivariantSheaf(Arc<HSpace>);

impl EquivariantSheaf {
    pub fn new(space: HSpace) -> Result<EquivariantSheaf> {
        if let Err(p) = space.moment_map().etale_certificate() {
            return Err(Error::invalid(
                "EquivariantSheaf",
                "moment étale",
                format!("moment map not a local homeomorphism at {}", space.total.point(p)),
            ));
        }
        Ok(EquivariantSheaf(Arc::new(space)))
    }

    pub fn space(&self) -> &Arc<HSpace> {
        &self.0
    }
}

impl Deref for EquivariantSheaf {
    type Target = HSpace;
    fn deref(&self) -> &HSpace {
        &self.0
    }
}

/// A continuous map of totals commuting with moments and actions.
#[derive(Clone, PartialEq, Debug)]
pub struct EquivariantMap {
    dom: Arc<HSpace>,
    cod: Arc<HSpace>,
    map: Vec<usize>,
}

impl EquivariantMap {
    pub fn new(dom: Arc<HSpace>, cod: Arc<HSpace>, map: Vec<usize>) -> Result<EquivariantMap> {
        const M: &str = "EquivariantMap";
        if *dom.base != *cod.base {
            return Err(Error::invalid(M, "same base", "spaces over different groupoids"));
        }
        if map.len() != dom.len() || map.iter().any(|&y| y >= cod.len()) {
            return Err(Error::invalid(M, "shape", "map does not cover the domain"));
        }
        if CMap::new(dom.total.clone(), cod.total.clone(), map.clone()).is_err() {
            return Err(Error::invalid(M, "continuous", "map not monotone"));
        }
        for e in 0..dom.len() {
            if cod.moment[map[e]] != dom.moment[e] {
                return Err(Error::invalid(M, "μ'∘f = μ", dom.total.point(e).to_string()));
            }
            for &h in dom.base.arrows_from(dom.moment[e]) {
                if map[dom.act(h, e)] != cod.act(h, map[e]) {
                    return Err(Error::invalid(M, "f(h·e) = h·f(e)", dom.total.point(e).to_string()));
                }
            }
        }
        Ok(EquivariantMap { dom, cod, map })
    }

    pub fn identity(space: &Arc<HSpace>) -> EquivariantMap {
        EquivariantMap { dom: space.clone(), cod: space.clone(), map: (0..space.len()).collect() }
    }

    pub fn dom(&self) -> &Arc<HSpace> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<HSpace> {
        &self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, e: usize) -> usize {
        self.map[e]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &EquivariantMap) -> Result<EquivariantMap> {
        if *self.cod != *next.dom {
            return Err(Error::Mismatch("composing equivariant maps through different spaces".into()));
        }
        Ok(EquivariantMap {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            map: self.map.iter().map(|&e| next.map[e]).collect(),
        })
    }

    /// Bijective with monotone inverse; the inverse is then automatically equivariant.
    pub fn is_isomorphism(&self) -> bool {
        CMap::new_unchecked(self.dom.total.clone(), self.cod.total.clone(), self.map.clone()).is_homeomorphism()
    }
}
