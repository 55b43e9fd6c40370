use std::sync::Arc;

use super::{FinGroupoid, GroupoidHom, GroupoidParts, NatTrans};
use crate::error::{Error, Result};
use crate::fintop::TupleSpace;

/// Largest weak pullback built; spaces store their order densely.
pub const MAX_PULLBACK_ARROWS: usize = 20_000;

/// Number of arrows of the weak pullback of `φ` and `ψ`, without building it.
pub fn pullback_arrow_count(phi: &GroupoidHom, psi: &GroupoidHom) -> usize {
    let k = phi.cod();
    let over = |h: &GroupoidHom| {
        let mut c = vec![0usize; k.n_obj()];
        for u in 0..h.dom().n_arr() {
            c[h.f0(h.dom().s(u))] += 1;
        }
        c
    };
    let (a, b) = (over(phi), over(psi));
    (0..k.n_arr()).map(|r| a[k.s(r)] * b[k.t(r)]).sum()
}

/// The weak pullback of `φ: G → K` and `ψ: L → K`.
///
/// Objects are triples `(x, z, r)` with `r: φ(x) → ψ(z)`. An arrow
/// `(x, z, r) → (x', z', r')` is a pair `(u, v)` with `r' φ(u) = ψ(v) r`; it is
/// stored as the triple `(u, v, r)` of the pair and the source's `r`.
#[derive(Clone, Debug)]
pub struct WeakPullback {
    pub groupoid: Arc<FinGroupoid>,
    pub objects: TupleSpace,
    pub arrows: TupleSpace,
    pub pr1: GroupoidHom,
    pub pr2: GroupoidHom,
    /// `(x, z, r) ↦ r`, a transformation `φ∘pr1 ⇒ ψ∘pr2`.
    pub cell: NatTrans,
    pub phi: GroupoidHom,
    pub psi: GroupoidHom,
}

pub fn weak_pullback(phi: &GroupoidHom, psi: &GroupoidHom) -> Result<WeakPullback> {
    if **phi.cod() != **psi.cod() {
        return Err(Error::Mismatch("weak pullback of homs with different codomains".into()));
    }
    let (g, l, k) = (phi.dom(), psi.dom(), phi.cod());
    let n_arrows = pullback_arrow_count(phi, psi);
    if n_arrows > MAX_PULLBACK_ARROWS {
        return Err(Error::TooLarge(format!("weak pullback with {n_arrows} arrows")));
    }
    let objects = TupleSpace::build(
        &[g.obj(), l.obj(), k.arr()],
        (0..g.n_obj()).flat_map(|x| {
            (0..l.n_obj()).flat_map(move |z| k.hom(phi.f0(x), psi.f0(z)).into_iter().map(move |r| vec![x, z, r]))
        }),
    );
    let arrows = TupleSpace::build(
        &[g.arr(), l.arr(), k.arr()],
        (0..g.n_arr()).flat_map(|u| {
            (0..l.n_arr()).flat_map(move |v| {
                k.hom(phi.f0(g.s(u)), psi.f0(l.s(v))).into_iter().map(move |r| vec![u, v, r])
            })
        }),
    );
    let target_r = |i: usize| {
        let (u, v, r) = (arrows.comp(i, 0), arrows.comp(i, 1), arrows.comp(i, 2));
        k.compose(psi.f1(v), k.compose(r, k.inv(phi.f1(u))))
    };
    let n1 = arrows.len();
    let obj = |x: usize, z: usize, r: usize| objects.find(&[x, z, r]).expect("pullback object");
    let arr = |u: usize, v: usize, r: usize| arrows.find(&[u, v, r]).expect("pullback arrow");
    let src: Vec<usize> =
        (0..n1).map(|i| obj(g.s(arrows.comp(i, 0)), l.s(arrows.comp(i, 1)), arrows.comp(i, 2))).collect();
    let tgt: Vec<usize> = (0..n1).map(|i| obj(g.t(arrows.comp(i, 0)), l.t(arrows.comp(i, 1)), target_r(i))).collect();
    let unit = (0..objects.len())
        .map(|o| {
            let c = objects.comps(o);
            arr(g.unit(c[0]), l.unit(c[1]), c[2])
        })
        .collect();
    let inv = (0..n1)
        .map(|i| {
            let c = arrows.comps(i);
            arr(g.inv(c[0]), l.inv(c[1]), target_r(i))
        })
        .collect();
    let groupoid = FinGroupoid::assemble(GroupoidParts {
        obj: objects.space().clone(),
        arr: arrows.space().clone(),
        src: src.clone(),
        tgt,
        unit,
        inv,
        comp: |a, b| {
            let (ca, cb) = (arrows.comps(a), arrows.comps(b));
            arrows.find(&[g.compose(ca[0], cb[0]), l.compose(ca[1], cb[1]), cb[2]])
        },
    })?;
    let groupoid = Arc::new(groupoid);
    let pr1 = GroupoidHom::trusted(
        groupoid.clone(),
        g.clone(),
        (0..objects.len()).map(|o| objects.comp(o, 0)).collect(),
        (0..n1).map(|i| arrows.comp(i, 0)).collect(),
    );
    let pr2 = GroupoidHom::trusted(
        groupoid.clone(),
        l.clone(),
        (0..objects.len()).map(|o| objects.comp(o, 1)).collect(),
        (0..n1).map(|i| arrows.comp(i, 1)).collect(),
    );
    let cell = NatTrans::new(pr1.then(phi)?, pr2.then(psi)?, (0..objects.len()).map(|o| objects.comp(o, 2)).collect())?;
    Ok(WeakPullback { groupoid, objects, arrows, pr1, pr2, cell, phi: phi.clone(), psi: psi.clone() })
}

impl WeakPullback {
    pub fn object(&self, x: usize, z: usize, r: usize) -> Option<usize> {
        self.objects.find(&[x, z, r])
    }

    pub fn arrow(&self, u: usize, v: usize, r: usize) -> Option<usize> {
        self.arrows.find(&[u, v, r])
    }

    /// The map `w ↦ (a(w), b(w), ω(w))` induced by a cone `(a, b, ω: φa ⇒ ψb)`.
    pub fn induced(&self, a: &GroupoidHom, b: &GroupoidHom, omega: &NatTrans) -> Result<GroupoidHom> {
        if omega.src() != &a.then(&self.phi)? || omega.dst() != &b.then(&self.psi)? {
            return Err(Error::Mismatch("cone transformation does not run φa ⇒ ψb".into()));
        }
        let w = a.dom();
        let f0 = (0..w.n_obj())
            .map(|x| self.object(a.f0(x), b.f0(x), omega.at(x)).expect("cone object"))
            .collect();
        let f1 = (0..w.n_arr())
            .map(|e| self.arrow(a.f1(e), b.f1(e), omega.at(w.s(e))).expect("cone arrow"))
            .collect();
        GroupoidHom::new(w.clone(), self.groupoid.clone(), f0, f1)
    }
}
