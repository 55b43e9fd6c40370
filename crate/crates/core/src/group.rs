//! Small finite groups given by multiplication tables, used for isotropy
//! groups and as band data in generated instances.

use crate::error::{Error, Result};
use crate::point::Point;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGroup {
    elements: Vec<Point>,
    identity: usize,
    mul: Vec<Vec<usize>>,
}

impl FinGroup {
    /// `mul[a][b]` is the product `a·b`.
    pub fn new(elements: Vec<Point>, mul: Vec<Vec<usize>>) -> Result<FinGroup> {
        let n = elements.len();
        if n == 0 || mul.len() != n || mul.iter().any(|row| row.len() != n || row.iter().any(|&c| c >= n)) {
            return Err(Error::invalid("FinGroup", "shape", "square table over the elements"));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mul[e][a] == a && mul[a][e] == a))
            .ok_or_else(|| Error::invalid("FinGroup", "identity", "no two-sided unit"))?;
        for a in 0..n {
            if !(0..n).any(|b| mul[a][b] == identity && mul[b][a] == identity) {
                return Err(Error::invalid("FinGroup", "inverses", elements[a].to_string()));
            }
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::invalid("FinGroup", "associativity", format!("{a},{b},{c}")));
                    }
                }
            }
        }
        Ok(FinGroup { elements, identity, mul })
    }

    pub fn trivial() -> FinGroup {
        FinGroup { elements: vec![Point::atom("e")], identity: 0, mul: vec![vec![0]] }
    }

    /// Cyclic group of order `n` with elements `e, g, g2, ...`.
    pub fn cyclic(n: usize) -> FinGroup {
        let elements = (0..n)
            .map(|k| match k {
                0 => Point::atom("e"),
                1 => Point::atom("g"),
                _ => Point::atom(&format!("g{k}")),
            })
            .collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FinGroup::new(elements, mul).expect("cyclic table")
    }

    pub fn klein() -> FinGroup {
        let elements = ["e", "a", "b", "c"].iter().map(|s| Point::atom(s)).collect();
        let mul = (0..4).map(|a: usize| (0..4).map(|b: usize| a ^ b).collect()).collect();
        FinGroup::new(elements, mul).expect("klein table")
    }

    /// Permutations of three letters, composed right to left.
    pub fn symmetric3() -> FinGroup {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let names = ["e", "s01", "s12", "s02", "r", "r2"];
        let find = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let mul = perms
            .iter()
            .map(|a| perms.iter().map(|b| find([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        FinGroup::new(names.iter().map(|s| Point::atom(s)).collect(), mul).expect("s3 table")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Point] {
        &self.elements
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.mul[a][b] == self.identity).expect("group element has an inverse")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul[x][a];
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul[a][b] == self.mul[b][a]))
    }

    pub fn is_cyclic_of_order(&self, n: usize) -> bool {
        self.order() == n && (0..n).any(|a| self.element_order(a) == n)
    }

    /// Decides isomorphism by searching for a multiplicative bijection.
    pub fn is_isomorphic(&self, other: &FinGroup) -> bool {
        if self.order() != other.order() {
            return false;
        }
        let mut a_orders: Vec<usize> = (0..self.order()).map(|a| self.element_order(a)).collect();
        let mut b_orders: Vec<usize> = (0..other.order()).map(|b| other.element_order(b)).collect();
        a_orders.sort_unstable();
        b_orders.sort_unstable();
        if a_orders != b_orders {
            return false;
        }
        let mut image = vec![usize::MAX; self.order()];
        let mut used = vec![false; other.order()];
        image[self.identity] = other.identity;
        used[other.identity] = true;
        self.iso_search(other, 0, &mut image, &mut used)
    }

    fn iso_search(&self, other: &FinGroup, k: usize, image: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        if k == self.order() {
            return (0..self.order())
                .all(|a| (0..self.order()).all(|b| image[self.mul[a][b]] == other.mul[image[a]][image[b]]));
        }
        if image[k] != usize::MAX {
            return self.iso_search(other, k + 1, image, used);
        }
        for c in 0..other.order() {
            if used[c] || other.element_order(c) != self.element_order(k) {
                continue;
            }
            image[k] = c;
            used[c] = true;
            let consistent = (0..=k).all(|a| {
                (0..=k).all(|b| {
                    let ab = self.mul[a][b];
                    image[a] == usize::MAX
                        || image[b] == usize::MAX
                        || image[ab] == usize::MAX
                        || image[ab] == other.mul[image[a]][image[b]]
                })
            });
            if consistent && self.iso_search(other, k + 1, image, used) {
                return true;
            }
            image[k] = usize::MAX;
            used[c] = false;
        }
        false
    }
}
