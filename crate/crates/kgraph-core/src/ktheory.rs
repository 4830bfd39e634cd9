//! Finite-stage K-theory data: cokernel presentations, the induced
//! endomorphism for rank-2 graphs, stationary direct limits, and a bounded
//! cokernel class search.
//!
//! For a square nonnegative matrix `A` the presentation of
//! `coker(1 - A^t) = Z^N / im(1 - A^t)` is read off a Smith normal form
//! `D = U (1-A^t) V`: the class of `z` is determined by the coordinates of
//! `U z`, reduced modulo the invariant factors. Canonical coordinates are
//! the residues at factors `>= 2` followed by the free coordinates; factor-1
//! positions carry no information and are dropped.
//!
//! The positive cone of the associated `K_0` group is *generated* by the
//! classes of the standard basis vectors, and when the graph of `A` has no
//! cycles this generating set is an exact image of the cone; otherwise the
//! generators are recorded as formal data without the order claim, and the
//! presentation says which of the two situations it is in.
//!
//! When two matrices commute, `A_1^t` descends to an endomorphism of
//! `coker(1 - A_2^t)`; the construction validates this lattice inclusion
//! explicitly instead of trusting it. Stationary direct limits
//! `lim (Z^N, A^t)` get decidable equality through the eventual kernel
//! `ker (A^t)^N`, and positivity of a limit class is semi-decided by pushing
//! the representative forward a bounded number of stages.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::boxsearch;
use crate::cycles::cycle_vertices;
use crate::graph::KGraph;
use crate::hermite::{hermite_normal_form, solve_linear};
use crate::matrix::IntMatrix;
use crate::smith::{smith_normal_form, SmithForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum KtError {
    #[error("operation requires a rank-2 graph")]
    NotRank2,
    #[error("matrix must be square")]
    NotSquare,
    #[error("vector length {found} does not match the expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("class vector must be nonnegative")]
    NegativeTarget,
    #[error("induced map does not preserve the image lattice")]
    WellDefinednessFailure,
}

/// Whether the recorded cone generators are an exact image of the positive
/// cone (guaranteed for cycle-free graphs) or merely formal generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeStatus {
    OrderIsomorphic,
    FormalGenerators,
}

/// Canonical coordinates of a cokernel class: residues at the invariant
/// factors `>= 2`, then the free coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CokerClass {
    pub torsion: Vec<BigInt>,
    pub free: Vec<BigInt>,
}

impl CokerClass {
    pub fn is_zero(&self) -> bool {
        self.torsion.iter().all(Zero::is_zero) && self.free.iter().all(Zero::is_zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CokerPresentation {
    source: IntMatrix,
    smith: SmithForm,
    torsion_positions: Vec<usize>,
    free_positions: Vec<usize>,
    torsion_orders: Vec<BigInt>,
    cone: ConeStatus,
}

/// Presentation of `coker(1 - A^t)` for a square matrix `A`.
pub fn coker_presentation(a: &IntMatrix) -> Result<CokerPresentation, KtError> {
    if !a.is_square() {
        return Err(KtError::NotSquare);
    }
    let n = a.rows();
    let source = a.one_minus_transpose();
    let smith = smith_normal_form(&source);
    let mut torsion_positions = Vec::new();
    let mut free_positions = Vec::new();
    let mut torsion_orders = Vec::new();
    for (i, d) in smith.invariant_factors.iter().enumerate() {
        if d.is_zero() {
            free_positions.push(i);
        } else if *d >= BigInt::from(2) {
            torsion_positions.push(i);
            torsion_orders.push(d.clone());
        }
    }
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|v| (0..n).map(|w| a[(v, w)].is_positive()).collect())
        .collect();
    let cone = if cycle_vertices(&adj).is_empty() {
        ConeStatus::OrderIsomorphic
    } else {
        ConeStatus::FormalGenerators
    };
    Ok(CokerPresentation {
        source,
        smith,
        torsion_positions,
        free_positions,
        torsion_orders,
        cone,
    })
}

impl CokerPresentation {
    /// The matrix `1 - A^t` whose cokernel is presented.
    pub fn source(&self) -> &IntMatrix {
        &self.source
    }

    pub fn smith(&self) -> &SmithForm {
        &self.smith
    }

    /// Full invariant-factor chain of the source, ones and zeros included.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.smith.invariant_factors
    }

    pub fn torsion_orders(&self) -> &[BigInt] {
        &self.torsion_orders
    }

    pub fn free_rank(&self) -> usize {
        self.free_positions.len()
    }

    pub fn cone(&self) -> ConeStatus {
        self.cone
    }

    /// Canonical coordinates of the class of `z`.
    pub fn project(&self, z: &[BigInt]) -> Result<CokerClass, KtError> {
        let n = self.source.rows();
        if z.len() != n {
            return Err(KtError::LengthMismatch {
                expected: n,
                found: z.len(),
            });
        }
        Ok(self.reduce_coords(&self.smith.u.mul_vec(z)))
    }

    /// Reduction of a vector already expressed in `U`-coordinates.
    fn reduce_coords(&self, y: &[BigInt]) -> CokerClass {
        let torsion = self
            .torsion_positions
            .iter()
            .zip(&self.torsion_orders)
            .map(|(&i, d)| y[i].mod_floor(d))
            .collect();
        let free = self.free_positions.iter().map(|&i| y[i].clone()).collect();
        CokerClass { torsion, free }
    }

    /// Classes of the standard basis vectors: the recorded generating set of
    /// the positive cone.
    pub fn cone_generators(&self) -> Vec<CokerClass> {
        let n = self.source.rows();
        (0..n)
            .map(|v| {
                let mut delta = vec![BigInt::zero(); n];
                delta[v] = BigInt::one();
                self.project(&delta).expect("length matches")
            })
            .collect()
    }
}

/// The endomorphism of `coker(1 - A_2^t)` induced by `A_1^t`, in canonical
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CokerEndo {
    presentation: CokerPresentation,
    coordinate_matrix: IntMatrix,
}

pub fn induced_coker_endo(g: &KGraph) -> Result<CokerEndo, KtError> {
    if g.rank() != 2 {
        return Err(KtError::NotRank2);
    }
    let a1t = g.matrix(0).transpose();
    let presentation = coker_presentation(g.matrix(1))?;
    let b2 = presentation.source().clone();

    // Commutation guarantees A_1^t im(1-A_2^t) <= im(1-A_2^t); check it
    // column by column anyway.
    for j in 0..b2.cols() {
        let pushed = a1t.mul_vec(&b2.col_vec(j));
        if solve_linear(&b2, &pushed).is_none() {
            return Err(KtError::WellDefinednessFailure);
        }
    }

    let u = presentation.smith.u.clone();
    let u_hermite = hermite_normal_form(&u);
    debug_assert_eq!(
        u_hermite.h,
        IntMatrix::identity(u.rows()),
        "unimodular matrices reduce to 1"
    );
    let u_inv = u_hermite.u;
    let coordinate_matrix = u.mul(&a1t).mul(&u_inv);
    Ok(CokerEndo {
        presentation,
        coordinate_matrix,
    })
}

impl CokerEndo {
    pub fn presentation(&self) -> &CokerPresentation {
        &self.presentation
    }

    /// The full action `U A_1^t U^{-1}` on `U`-coordinates.
    pub fn coordinate_matrix(&self) -> &IntMatrix {
        &self.coordinate_matrix
    }

    /// Apply the endomorphism to a class.
    pub fn apply(&self, class: &CokerClass) -> Result<CokerClass, KtError> {
        let p = &self.presentation;
        if class.torsion.len() != p.torsion_positions.len()
            || class.free.len() != p.free_positions.len()
        {
            return Err(KtError::LengthMismatch {
                expected: p.torsion_positions.len() + p.free_positions.len(),
                found: class.torsion.len() + class.free.len(),
            });
        }
        let n = p.source.rows();
        let mut y = vec![BigInt::zero(); n];
        for (&i, t) in p.torsion_positions.iter().zip(&class.torsion) {
            y[i] = t.clone();
        }
        for (&i, f) in p.free_positions.iter().zip(&class.free) {
            y[i] = f.clone();
        }
        Ok(p.reduce_coords(&self.coordinate_matrix.mul_vec(&y)))
    }

    /// The action restricted to the meaningful coordinates (torsion orders
    /// `>= 2` first, then free), with torsion rows reduced modulo their
    /// orders. Factor-1 columns contribute nothing: their images lie in the
    /// reduction lattice, which is exactly the well-definedness validated at
    /// construction.
    pub fn reduced_action(&self) -> (Vec<BigInt>, IntMatrix) {
        let p = &self.presentation;
        let coords: Vec<usize> = p
            .torsion_positions
            .iter()
            .chain(p.free_positions.iter())
            .copied()
            .collect();
        let tcount = p.torsion_positions.len();
        let mut m = IntMatrix::zero(coords.len(), coords.len());
        for (r, &pr) in coords.iter().enumerate() {
            for (c, &pc) in coords.iter().enumerate() {
                let raw = self.coordinate_matrix[(pr, pc)].clone();
                m[(r, c)] = if r < tcount {
                    raw.mod_floor(&p.torsion_orders[r])
                } else {
                    raw
                };
            }
        }
        (p.torsion_orders.clone(), m)
    }
}

/// Context for a stationary direct limit `lim (Z^N, A^t)` with one repeating
/// connecting matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StationaryLimit {
    generator: IntMatrix,
    annihilator: IntMatrix,
}

/// An element of the limit: an integer vector sitting at a stage index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitElement {
    pub stage: i64,
    pub vec: Vec<BigInt>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Positivity {
    /// Least extra shift `offset <= horizon` making the representative
    /// componentwise nonnegative.
    Positive { offset: u32 },
    /// Not settled within the horizon; explicitly *not* a negative verdict.
    Undetermined,
}

impl StationaryLimit {
    pub fn new(generator: IntMatrix) -> Result<Self, KtError> {
        if !generator.is_square() {
            return Err(KtError::NotSquare);
        }
        let annihilator = generator.pow(generator.rows() as u64);
        Ok(StationaryLimit {
            generator,
            annihilator,
        })
    }

    pub fn generator(&self) -> &IntMatrix {
        &self.generator
    }

    pub fn element(&self, stage: i64, vec: Vec<BigInt>) -> Result<LimitElement, KtError> {
        if vec.len() != self.generator.rows() {
            return Err(KtError::LengthMismatch {
                expected: self.generator.rows(),
                found: vec.len(),
            });
        }
        Ok(LimitElement { stage, vec })
    }

    /// Equality in the limit: shift the earlier representative to the later
    /// stage and test the difference against the eventual kernel
    /// `ker (A^t)^N`.
    pub fn equal(&self, a: &LimitElement, b: &LimitElement) -> Result<bool, KtError> {
        let n = self.generator.rows();
        for e in [a, b] {
            if e.vec.len() != n {
                return Err(KtError::LengthMismatch {
                    expected: n,
                    found: e.vec.len(),
                });
            }
        }
        let (early, late) = if a.stage <= b.stage { (a, b) } else { (b, a) };
        let shift = (late.stage - early.stage) as u64;
        let shifted = self.generator.pow(shift).mul_vec(&early.vec);
        let diff: Vec<BigInt> = shifted.iter().zip(&late.vec).map(|(x, y)| x - y).collect();
        Ok(self.annihilator.mul_vec(&diff).iter().all(Zero::is_zero))
    }

    /// Bounded positivity: the least `m <= horizon` with `(A^t)^m v >= 0`.
    pub fn positive_bounded(&self, a: &LimitElement, horizon: u32) -> Result<Positivity, KtError> {
        let n = self.generator.rows();
        if a.vec.len() != n {
            return Err(KtError::LengthMismatch {
                expected: n,
                found: a.vec.len(),
            });
        }
        let mut v = a.vec.clone();
        for m in 0..=horizon {
            if v.iter().all(|x| !x.is_negative()) {
                return Ok(Positivity::Positive { offset: m });
            }
            if m < horizon {
                v = self.generator.mul_vec(&v);
            }
        }
        Ok(Positivity::Undetermined)
    }
}

/// Outcome of the bounded cokernel class search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HalphaOutcome {
    Found { x: Vec<BigInt>, y: Vec<BigInt> },
    NotFoundWithinBox,
}

/// Searches `x, y` in `[-radius, radius]^N` with
/// `c = (1-A_1^t) x + (1-A_2^t) y`, restricted to targets `c` whose class
/// modulo `im(1-A_2^t)` is nonzero (the zero class is excluded up front).
/// A bounded oracle: `NotFoundWithinBox` is a proof of absence only over the
/// box.
pub fn halpha_class_test(g: &KGraph, c: &[BigInt], radius: u32) -> Result<HalphaOutcome, KtError> {
    HalphaSearcher::new(g, radius)?.search(c)
}

/// Reusable context for [`halpha_class_test`] over many targets on one
/// graph.
///
/// A decomposition `c = (1-A_1^t) x + (1-A_2^t) y` forces the class of
/// `c - (1-A_1^t) x` in `coker(1-A_2^t)` to vanish, and the Smith projection
/// decides that instantly. The searcher therefore tabulates the classes of
/// `(1-A_1^t) x` for every `x` in the box once (in lexicographic order), and
/// per target only runs the boxed `y`-search on the few `x` whose class
/// matches — the first match with a boxed solution yields exactly the
/// lexicographically first `(x, y)` that plain joint enumeration would
/// produce.
pub struct HalphaSearcher {
    n: usize,
    radius: u32,
    /// class of `(1-A_1^t) x` -> all `x` with that class, in lex order
    /// (`i128` fast path).
    class_map: Option<ClassMap>,
    /// slow-path data (arbitrary-precision inputs)
    b1: IntMatrix,
    b2: IntMatrix,
    presentation: CokerPresentation,
}

struct ClassMap {
    map: alloc::collections::BTreeMap<Vec<i128>, Vec<Vec<i128>>>,
    b1: Vec<Vec<i128>>,
    b2_cols: Vec<Vec<i128>>,
    u: Vec<Vec<i128>>,
    torsion_positions: Vec<usize>,
    torsion_orders: Vec<i128>,
    free_positions: Vec<usize>,
    /// Largest `|c|` entry the `i128` arithmetic is safe for.
    target_bound: i128,
}

impl ClassMap {
    /// Canonical class tuple of a vector: torsion residues then free
    /// coordinates of `U z`.
    fn class_of(&self, z: &[i128]) -> Vec<i128> {
        let mut out = Vec::with_capacity(self.torsion_positions.len() + self.free_positions.len());
        for (&i, &d) in self.torsion_positions.iter().zip(&self.torsion_orders) {
            let y: i128 = self.u[i].iter().zip(z).map(|(a, b)| a * b).sum();
            out.push(y.rem_euclid(d));
        }
        for &i in &self.free_positions {
            let y: i128 = self.u[i].iter().zip(z).map(|(a, b)| a * b).sum();
            out.push(y);
        }
        out
    }
}

impl HalphaSearcher {
    pub fn new(g: &KGraph, radius: u32) -> Result<Self, KtError> {
        if g.rank() != 2 {
            return Err(KtError::NotRank2);
        }
        let n = g.vertex_count();
        let b1 = g.matrix(0).one_minus_transpose();
        let b2 = g.matrix(1).one_minus_transpose();
        let presentation = coker_presentation(g.matrix(1))?;
        let class_map = Self::build_class_map(n, radius, &b1, &b2, &presentation);
        Ok(HalphaSearcher {
            n,
            radius,
            class_map,
            b1,
            b2,
            presentation,
        })
    }

    fn build_class_map(
        n: usize,
        radius: u32,
        b1: &IntMatrix,
        b2: &IntMatrix,
        p: &CokerPresentation,
    ) -> Option<ClassMap> {
        use num_traits::ToPrimitive;
        // everything must fit i128 with room for the dot products
        let to_rows = |m: &IntMatrix| -> Option<Vec<Vec<i128>>> {
            (0..m.rows())
                .map(|i| {
                    m.row(i)
                        .iter()
                        .map(|x| x.to_i128())
                        .collect::<Option<Vec<i128>>>()
                })
                .collect()
        };
        let b1_rows = to_rows(b1)?;
        let u_rows = to_rows(&p.smith.u)?;
        let b2_rows = to_rows(b2)?;
        let torsion_orders: Vec<i128> = p
            .torsion_orders
            .iter()
            .map(|d| d.to_i128())
            .collect::<Option<Vec<i128>>>()?;
        let mut max_abs: i128 = 1;
        for v in b1_rows.iter().chain(&u_rows).chain(&b2_rows).flatten() {
            max_abs = max_abs.max(v.checked_abs()?);
        }
        for d in &torsion_orders {
            max_abs = max_abs.max(*d);
        }
        // |U (c - b1 x)| <= maxU * n * (|c| + n * maxB1 * radius): solve for
        // the largest safe |c| entry, leaving a wide margin
        let r = i128::from(radius);
        let slack = (i128::MAX / 16)
            .checked_div(max_abs.checked_mul(n as i128 + 1)?.max(1))?
            .checked_sub(max_abs.checked_mul(n as i128 + 1)?.checked_mul(r + 1)?)?;
        if slack <= 0 {
            return None;
        }

        let b2_cols: Vec<Vec<i128>> = (0..n)
            .map(|j| (0..n).map(|i| b2_rows[i][j]).collect())
            .collect();
        let mut cm = ClassMap {
            map: alloc::collections::BTreeMap::new(),
            b1: b1_rows,
            b2_cols,
            u: u_rows,
            torsion_positions: p.torsion_positions.clone(),
            torsion_orders,
            free_positions: p.free_positions.clone(),
            target_bound: slack,
        };
        if n == 0 {
            return Some(cm);
        }
        // odometer over x in lex order, image b1 x maintained incrementally
        let mut x = alloc::vec![-r; n];
        let mut image: Vec<i128> = (0..n)
            .map(|i| cm.b1[i].iter().map(|a| a * (-r)).sum())
            .collect();
        loop {
            let class = cm.class_of(&image);
            cm.map.entry(class).or_default().push(x.clone());
            let mut i = n;
            let done = loop {
                if i == 0 {
                    break true;
                }
                i -= 1;
                if x[i] < r {
                    x[i] += 1;
                    for (row, img) in image.iter_mut().enumerate() {
                        *img += cm.b1[row][i];
                    }
                    break false;
                }
                // reset coordinate i from r to -r
                x[i] = -r;
                for (row, img) in image.iter_mut().enumerate() {
                    *img -= cm.b1[row][i] * 2 * r;
                }
            };
            if done {
                break;
            }
        }
        Some(cm)
    }

    pub fn search(&self, c: &[BigInt]) -> Result<HalphaOutcome, KtError> {
        use num_traits::ToPrimitive;
        let n = self.n;
        if c.len() != n {
            return Err(KtError::LengthMismatch {
                expected: n,
                found: c.len(),
            });
        }
        if c.iter().any(Signed::is_negative) {
            return Err(KtError::NegativeTarget);
        }
        let zero_class = self.presentation.project(c)?.is_zero();
        if zero_class {
            return Ok(HalphaOutcome::NotFoundWithinBox);
        }

        if let Some(cm) = &self.class_map {
            let converted = c
                .iter()
                .map(|x| x.to_i128().filter(|v| v.abs() <= cm.target_bound))
                .collect::<Option<Vec<i128>>>();
            if let Some(ci) = converted {
                let key = cm.class_of(&ci);
                let Some(candidates) = cm.map.get(&key) else {
                    return Ok(HalphaOutcome::NotFoundWithinBox);
                };
                let r = i128::from(self.radius);
                for x in candidates {
                    let residual: Vec<i128> = (0..n)
                        .map(|row| {
                            ci[row] - cm.b1[row].iter().zip(x).map(|(a, b)| a * b).sum::<i128>()
                        })
                        .collect();
                    if let Some(y) = boxsearch::solve_equality_in_box(&cm.b2_cols, &residual, &r) {
                        return Ok(HalphaOutcome::Found {
                            x: boxsearch::to_bigints(x),
                            y: boxsearch::to_bigints(&y),
                        });
                    }
                }
                return Ok(HalphaOutcome::NotFoundWithinBox);
            }
        }

        // arbitrary-precision fallback: joint lexicographic search
        let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(2 * n);
        for j in 0..n {
            cols.push(self.b1.col_vec(j));
        }
        for j in 0..n {
            cols.push(self.b2.col_vec(j));
        }
        Ok(
            match boxsearch::solve_equality_in_box(&cols, c, &BigInt::from(self.radius)) {
                Some(v) => HalphaOutcome::Found {
                    x: v[..n].to_vec(),
                    y: v[n..].to_vec(),
                },
                None => HalphaOutcome::NotFoundWithinBox,
            },
        )
    }
}
