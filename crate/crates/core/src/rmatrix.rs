//! The combinatorial R-matrix `B_l ⊗ B_{l'} -> B_{l'} ⊗ B_l`.
//!
//! For `l >= l'` the isomorphism and the energy function come from the
//! two-column pairing diagram: every letter `i` of the right column is
//! joined to the largest still-free letter `j < i` of the left column, or,
//! when there is none, wraps around to the largest free letter (a *winding*
//! link). The paired left letters form the new left factor, the right letters
//! plus the leftover left letters form the new right factor, and the energy
//! is minus the number of non-winding links, so `H((n^l) ⊗ (n^{l'})) = 0`.
//!
//! For `l < l'` the map is the inverse of the `l' >= l` map, found by
//! searching the (small) set of pairs with the same letter content.

use std::fmt;

use crate::crystal::{CrystalParams, Element, Letter};
use crate::error::{Error, Result};
use crate::par::{self, Parallelism};

/// `z^d b`, an element of the affinization `Aff(B_l)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineElement {
    pub d: i64,
    pub b: Element,
}

impl AffineElement {
    pub fn new(d: i64, b: Element) -> Self {
        AffineElement { d, b }
    }
}

impl fmt::Display for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z^{{{}}}({})", self.d, self.b)
    }
}

impl fmt::Debug for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// One line of the pairing diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Link {
    pub right: Letter,
    pub left: Letter,
    pub winding: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    pub links: Vec<Link>,
    /// Left letters left over after all right letters are paired, sorted.
    pub unpaired_left: Vec<Letter>,
}

impl Pairing {
    pub fn winding_count(&self) -> usize {
        self.links.iter().filter(|k| k.winding).count()
    }

    pub fn unwinding_count(&self) -> usize {
        self.links.len() - self.winding_count()
    }

    /// Minus the number of unwinding links.
    pub fn energy(&self) -> i32 {
        -(self.unwinding_count() as i32)
    }

    /// Splits the diagram into `(b̃', b̃)`.
    pub fn image(&self) -> (Element, Element) {
        let left = Element::from_multiset(self.links.iter().map(|k| k.left).collect());
        let right = Element::from_multiset(
            self.links
                .iter()
                .map(|k| k.right)
                .chain(self.unpaired_left.iter().copied())
                .collect(),
        );
        (left, right)
    }
}

/// Image of `b ⊗ b'` under the isomorphism, with the energy `H(b ⊗ b')`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IsoImage {
    /// `b̃'`, in `B_{l'}`.
    pub left: Element,
    /// `b̃`, in `B_l`.
    pub right: Element,
    pub h: i32,
}

impl fmt::Display for IsoImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})|({}) H={}", self.left, self.right, self.h)
    }
}

/// Pairs the letters of `b2` (right column) with those of `b` (left
/// column), taking right letters from largest to smallest.
pub fn pair(params: CrystalParams, b: &Element, b2: &Element) -> Result<Pairing> {
    let order: Vec<usize> = (0..b2.len()).rev().collect();
    pair_in_order(params, b, b2, &order)
}

/// As [`pair`], with the right letters visited in the given index order.
pub fn pair_in_order(
    params: CrystalParams,
    b: &Element,
    b2: &Element,
    order: &[usize],
) -> Result<Pairing> {
    params.check_element(b)?;
    params.check_element(b2)?;
    if b.len() < b2.len() {
        return Err(Error::Precondition(format!(
            "pairing needs l >= l', got l = {} and l' = {}",
            b.len(),
            b2.len()
        )));
    }
    let mut seen = vec![false; b2.len()];
    if order.len() != b2.len()
        || !order
            .iter()
            .all(|&k| k < b2.len() && !std::mem::replace(&mut seen[k], true))
    {
        return Err(Error::Precondition(
            "pick order must be a permutation of the right letters".into(),
        ));
    }
    Ok(pair_raw(b, b2, order, params.n()))
}

fn pair_raw(b: &Element, b2: &Element, order: &[usize], n: u8) -> Pairing {
    let mut free = b.content(n);
    let mut links = Vec::with_capacity(b2.len());
    for &k in order {
        let i = b2.letters()[k];
        let below = (1..i).rev().find(|&j| free[j as usize] > 0);
        let (left, winding) = match below {
            Some(j) => (j, false),
            None => {
                let top = (1..=n).rev().find(|&j| free[j as usize] > 0);
                (
                    top.expect("left column has at least as many letters as the right"),
                    true,
                )
            }
        };
        free[left as usize] -= 1;
        links.push(Link {
            right: i,
            left,
            winding,
        });
    }
    let unpaired_left = (1..=n)
        .flat_map(|j| std::iter::repeat_n(j, free[j as usize]))
        .collect();
    Pairing {
        links,
        unpaired_left,
    }
}

fn forward(b: &Element, b2: &Element, n: u8) -> IsoImage {
    let order: Vec<usize> = (0..b2.len()).rev().collect();
    let pairing = pair_raw(b, b2, &order, n);
    let (left, right) = pairing.image();
    IsoImage {
        left,
        right,
        h: pairing.energy(),
    }
}

/// Enumerates the sub-multisets of `content` of the given size, calling
/// `visit` with each one until it returns `Some`.
fn search_submultisets<T>(
    content: &mut [usize],
    letter: usize,
    remaining: usize,
    chosen: &mut Vec<Letter>,
    visit: &mut impl FnMut(&[Letter], &[usize]) -> Option<T>,
) -> Option<T> {
    if remaining == 0 {
        return visit(chosen, content);
    }
    if letter >= content.len() {
        return None;
    }
    let available = content[letter].min(remaining);
    for take in (0..=available).rev() {
        content[letter] -= take;
        chosen.extend(std::iter::repeat_n(letter as Letter, take));
        let found = search_submultisets(content, letter + 1, remaining - take, chosen, visit);
        chosen.truncate(chosen.len() - take);
        content[letter] += take;
        if found.is_some() {
            return found;
        }
    }
    None
}

fn backward(b: &Element, b2: &Element, n: u8) -> IsoImage {
    // Find x ⊗ y in B_{l'} ⊗ B_l whose forward image is b ⊗ b2.
    let mut content = b.content(n);
    for &x in b2.letters() {
        content[x as usize] += 1;
    }
    let mut chosen = Vec::with_capacity(b2.len());
    search_submultisets(&mut content, 1, b2.len(), &mut chosen, &mut |xs, rest| {
        let x = Element::from_sorted(xs.to_vec());
        let y = Element::from_sorted(
            (1..=n)
                .flat_map(|j| std::iter::repeat_n(j, rest[j as usize]))
                .collect(),
        );
        let img = forward(&x, &y, n);
        (img.left == *b && img.right == *b2).then_some(IsoImage {
            left: x,
            right: y,
            h: img.h,
        })
    })
    .expect("the isomorphism is a bijection on each weight space")
}

pub(crate) fn r_raw(b: &Element, b2: &Element, n: u8) -> IsoImage {
    if b.len() >= b2.len() {
        forward(b, b2, n)
    } else {
        backward(b, b2, n)
    }
}

/// The isomorphism `b ⊗ b' -> b̃' ⊗ b̃` together with `H(b ⊗ b')`.
pub fn combinatorial_r(params: CrystalParams, b: &Element, b2: &Element) -> Result<IsoImage> {
    params.check_element(b)?;
    params.check_element(b2)?;
    Ok(r_raw(b, b2, params.n()))
}

pub fn iso(params: CrystalParams, b: &Element, b2: &Element) -> Result<(Element, Element)> {
    combinatorial_r(params, b, b2).map(|img| (img.left, img.right))
}

/// The energy function, normalized by `H((n^l) ⊗ (n^{l'})) = 0`.
pub fn energy(params: CrystalParams, b: &Element, b2: &Element) -> Result<i32> {
    combinatorial_r(params, b, b2).map(|img| img.h)
}

/// In-place carrier step for `B_l ⊗ B_1`. Returns the emitted letter and
/// the local energy.
#[inline]
pub(crate) fn iso_row1_in_place(carrier: &mut [Letter], v: Letter) -> (Letter, i32) {
    match carrier.iter().rposition(|&x| x < v) {
        Some(j) => {
            let out = carrier[j];
            carrier[j] = v;
            (out, -1)
        }
        None => {
            let last = carrier.len() - 1;
            let out = carrier[last];
            carrier.copy_within(0..last, 1);
            carrier[0] = v;
            (out, 0)
        }
    }
}

/// In-place inverse step `B_1 ⊗ B_l -> B_l ⊗ B_1`. Returns the emitted letter.
#[inline]
pub(crate) fn iso_row1_inverse_in_place(v: Letter, carrier: &mut [Letter]) -> Letter {
    match carrier.iter().position(|&x| x > v) {
        Some(j) => {
            let out = carrier[j];
            carrier[j] = v;
            out
        }
        None => {
            let out = carrier[0];
            carrier.copy_within(1.., 0);
            let last = carrier.len() - 1;
            carrier[last] = v;
            out
        }
    }
}

/// `(nu_1..nu_l) ⊗ (v) -> (nu_j) ⊗ (...)` with the local energy.
pub fn iso_row1(b: &Element, v: Letter) -> (Letter, Element, i32) {
    let mut carrier = b.letters().to_vec();
    let (out, h) = iso_row1_in_place(&mut carrier, v);
    (out, Element::from_sorted(carrier), h)
}

/// Inverse of [`iso_row1`]: `(v) ⊗ (nu_1..nu_l) -> (...) ⊗ (nu_j)`.
pub fn iso_row1_inverse(v: Letter, b: &Element) -> (Element, Letter) {
    let mut carrier = b.letters().to_vec();
    let out = iso_row1_inverse_in_place(v, &mut carrier);
    (Element::from_sorted(carrier), out)
}

/// `R(z^d b ⊗ z^{d'} b') = z^{d' + H} b̃' ⊗ z^{d - H} b̃`.
pub fn apply_r(
    params: CrystalParams,
    x: &AffineElement,
    y: &AffineElement,
) -> Result<(AffineElement, AffineElement)> {
    let img = combinatorial_r(params, &x.b, &y.b)?;
    Ok(affine_from(x.d, y.d, img))
}

fn affine_from(d: i64, d2: i64, img: IsoImage) -> (AffineElement, AffineElement) {
    let h = img.h as i64;
    (
        AffineElement::new(d2 + h, img.left),
        AffineElement::new(d - h, img.right),
    )
}

fn apply_r_raw(x: &AffineElement, y: &AffineElement, n: u8) -> (AffineElement, AffineElement) {
    affine_from(x.d, y.d, r_raw(&x.b, &y.b, n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YbeCounterexample {
    pub input: [AffineElement; 3],
    pub lhs: [AffineElement; 3],
    pub rhs: [AffineElement; 3],
}

impl fmt::Display for YbeCounterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.input;
        let [l0, l1, l2] = &self.lhs;
        let [r0, r1, r2] = &self.rhs;
        write!(
            f,
            "{a}|{b}|{c}: (R1)(1R)(R1) = {l0}|{l1}|{l2}, (1R)(R1)(1R) = {r0}|{r1}|{r2}"
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YbeReport {
    pub sizes: [usize; 3],
    pub checked: u64,
    pub counterexample: Option<YbeCounterexample>,
}

impl YbeReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn r12(t: &[AffineElement; 3], n: u8) -> [AffineElement; 3] {
    let (a, b) = apply_r_raw(&t[0], &t[1], n);
    [a, b, t[2].clone()]
}

fn r23(t: &[AffineElement; 3], n: u8) -> [AffineElement; 3] {
    let (b, c) = apply_r_raw(&t[1], &t[2], n);
    [t[0].clone(), b, c]
}

/// Checks `(R⊗1)(1⊗R)(R⊗1) = (1⊗R)(R⊗1)(1⊗R)` on every element of
/// `B_l ⊗ B_{l'} ⊗ B_{l''}` and every exponent triple in
/// `[-window, window]^3`, comparing exponents as well as elements.
pub fn check_yang_baxter(
    params: CrystalParams,
    sizes: [usize; 3],
    window: i64,
    mode: Parallelism,
) -> Result<YbeReport> {
    if sizes.contains(&0) {
        return Err(Error::Precondition("crystal sizes must be positive".into()));
    }
    if window < 0 {
        return Err(Error::Precondition(
            "exponent window must be nonnegative".into(),
        ));
    }
    let mut triples = Vec::new();
    for a in params.elements(sizes[0]) {
        for b in params.elements(sizes[1]) {
            for c in params.elements(sizes[2]) {
                triples.push([a.clone(), b.clone(), c.clone()]);
            }
        }
    }
    let n = params.n();
    let exps: Vec<i64> = (-window..=window).collect();
    let counterexample = par::find_map_first(mode, &triples, |[a, b, c]| {
        for &d0 in &exps {
            for &d1 in &exps {
                for &d2 in &exps {
                    let input = [
                        AffineElement::new(d0, a.clone()),
                        AffineElement::new(d1, b.clone()),
                        AffineElement::new(d2, c.clone()),
                    ];
                    let lhs = r12(&r23(&r12(&input, n), n), n);
                    let rhs = r23(&r12(&r23(&input, n), n), n);
                    if lhs != rhs {
                        return Some(YbeCounterexample { input, lhs, rhs });
                    }
                }
            }
        }
        None
    });
    let per_triple = (exps.len() as u64).pow(3);
    Ok(YbeReport {
        sizes,
        checked: triples.len() as u64 * per_triple,
        counterexample,
    })
}
