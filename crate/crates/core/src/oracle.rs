//! Graph-path reconstruction of the R-matrix, independent of the pairing
//! diagram.
//!
//! The crystal graph of `B_l ⊗ B_{l'}` (all colors, including 0) is
//! connected. Walking it breadth-first from `(n^l) ⊗ (n^{l'})` and replaying
//! each `e_i` / `f_i` step on `(n^{l'}) ⊗ (n^l)` yields the unique crystal
//! isomorphism; the energy is accumulated edge by edge from its defining
//! `e_0` rule, starting at zero.
//!
//! Deliberately naive: the whole component is materialized.

use std::collections::{HashMap, VecDeque};

use crate::crystal::{self, CrystalParams, Element};
use crate::error::{Error, Result};
use crate::rmatrix::IsoImage;
use crate::tensor::TensorElement;

type Node = (Element, Element);

pub struct IsoOracle {
    params: CrystalParams,
    sizes: (usize, usize),
    table: HashMap<Node, IsoImage>,
}

/// Whether `e_0` acts on the left factor of `b ⊗ b'`.
fn e0_acts_left(b: &Element, b2: &Element, n: u8) -> bool {
    crystal::phi_raw(b, 0, n) >= crystal::epsilon_raw(b2, 0)
}

/// The energy increment along the `e_0` edge leaving `node`.
fn e0_step(node: &Node, image: &IsoImage, n: u8) -> i32 {
    let dom = e0_acts_left(&node.0, &node.1, n);
    let img = e0_acts_left(&image.left, &image.right, n);
    match (dom, img) {
        (true, true) => 1,
        (false, false) => -1,
        _ => 0,
    }
}

fn split(t: TensorElement) -> Node {
    let mut f = t.into_factors().into_iter();
    let a = f.next().unwrap();
    let b = f.next().unwrap();
    (a, b)
}

impl IsoOracle {
    /// Builds the full table for `B_l ⊗ B_{l'}`, then re-checks every edge.
    pub fn build(params: CrystalParams, l: usize, l2: usize) -> Result<Self> {
        if l == 0 || l2 == 0 {
            return Err(Error::Precondition("crystal sizes must be positive".into()));
        }
        let n = params.n();
        let anchor = (params.vacuum_element(l), params.vacuum_element(l2));
        let anchor_image = IsoImage {
            left: params.vacuum_element(l2),
            right: params.vacuum_element(l),
            h: 0,
        };
        let mut table = HashMap::new();
        table.insert(anchor.clone(), anchor_image);
        let mut queue = VecDeque::from([anchor]);
        while let Some(node) = queue.pop_front() {
            let image = table[&node].clone();
            let dom = TensorElement::pair(node.0.clone(), node.1.clone());
            let cod = TensorElement::pair(image.left.clone(), image.right.clone());
            for i in 0..n {
                if let Some(next) = dom.raise(i, n) {
                    let next = split(next);
                    if !table.contains_key(&next) {
                        let (left, right) = split(cod.raise(i, n).ok_or_else(|| {
                            Error::Internal(format!(
                                "e_{i} defined on {dom:?} but not on its image {cod:?}"
                            ))
                        })?);
                        let h = image.h + if i == 0 { e0_step(&node, &image, n) } else { 0 };
                        table.insert(next.clone(), IsoImage { left, right, h });
                        queue.push_back(next);
                    }
                }
                if let Some(next) = dom.lower(i, n) {
                    let next = split(next);
                    if !table.contains_key(&next) {
                        let (left, right) = split(cod.lower(i, n).ok_or_else(|| {
                            Error::Internal(format!(
                                "f_{i} defined on {dom:?} but not on its image {cod:?}"
                            ))
                        })?);
                        let mut next_image = IsoImage { left, right, h: 0 };
                        let back = if i == 0 {
                            e0_step(&next, &next_image, n)
                        } else {
                            0
                        };
                        next_image.h = image.h - back;
                        table.insert(next.clone(), next_image);
                        queue.push_back(next);
                    }
                }
            }
        }
        let expected = params.cardinality(l) * params.cardinality(l2);
        if table.len() != expected {
            return Err(Error::Internal(format!(
                "crystal graph of B_{l} ⊗ B_{l2} reached {} of {expected} elements",
                table.len()
            )));
        }
        let oracle = IsoOracle {
            params,
            sizes: (l, l2),
            table,
        };
        oracle.check_edges()?;
        Ok(oracle)
    }

    /// Every `e_i` edge must commute with the table and step the energy
    /// by the `e_0` rule.
    fn check_edges(&self) -> Result<()> {
        let n = self.params.n();
        for (node, image) in &self.table {
            let dom = TensorElement::pair(node.0.clone(), node.1.clone());
            let cod = TensorElement::pair(image.left.clone(), image.right.clone());
            for i in 0..n {
                let Some(next) = dom.raise(i, n) else {
                    if cod.raise(i, n).is_some() {
                        return Err(Error::Internal(format!(
                            "e_{i} kills {dom:?} but not its image"
                        )));
                    }
                    continue;
                };
                let next_image = &self.table[&split(next)];
                let mapped = cod.raise(i, n).map(split);
                let step = if i == 0 { e0_step(node, image, n) } else { 0 };
                if mapped != Some((next_image.left.clone(), next_image.right.clone()))
                    || next_image.h != image.h + step
                {
                    return Err(Error::Internal(format!(
                        "path-dependent image at e_{i} from {dom:?}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn params(&self) -> CrystalParams {
        self.params
    }

    pub fn sizes(&self) -> (usize, usize) {
        self.sizes
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn get(&self, b: &Element, b2: &Element) -> Option<&IsoImage> {
        self.table.get(&(b.clone(), b2.clone()))
    }

    /// Table entries in lexicographic order of the domain.
    pub fn entries(&self) -> Vec<(&Node, &IsoImage)> {
        let mut v: Vec<_> = self.table.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }
}

/// One-shot oracle query; builds the table for the sizes of `b` and `b2`.
pub fn iso_oracle(params: CrystalParams, b: &Element, b2: &Element) -> Result<IsoImage> {
    params.check_element(b)?;
    params.check_element(b2)?;
    let oracle = IsoOracle::build(params, b.len(), b2.len())?;
    oracle
        .get(b, b2)
        .cloned()
        .ok_or_else(|| Error::Internal(format!("{b:?} ⊗ {b2:?} unreachable")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: &str) -> Element {
        Element::parse(s).unwrap()
    }

    #[test]
    fn oracle_examples() {
        let n4 = CrystalParams::new(4).unwrap();
        let img = iso_oracle(n4, &el("1123"), &el("12")).unwrap();
        assert_eq!((img.left, img.right, img.h), (el("13"), el("1122"), -1));
        let img = iso_oracle(n4, &el("444"), &el("44")).unwrap();
        assert_eq!((img.left, img.right, img.h), (el("44"), el("444"), 0));
    }

    #[test]
    fn table_covers_the_product() {
        let n3 = CrystalParams::new(3).unwrap();
        let oracle = IsoOracle::build(n3, 2, 1).unwrap();
        assert_eq!(oracle.len(), 6 * 3);
        assert_eq!(oracle.entries().len(), 18);
        assert!(IsoOracle::build(n3, 0, 1).is_err());
    }
}
