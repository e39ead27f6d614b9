//! Numerators of generating functions of stabilized decreasing functions.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::Zero;

use crate::multiindex::{box_points, MultiIndex, Partition};

use super::table::DecreasingTable;
use super::GrowthError;

/// `R(Ȳ)` such that `Σ_s̄ (Σ_{‖ū‖=s̄} f(ū)) Ȳ^s̄ = R(Ȳ) / Π_i (1 − Y_i)^{d_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingNumerator {
    coeffs: BTreeMap<Vec<u32>, BigInt>,
    cap: Vec<u32>,
}

impl GeneratingNumerator {
    /// Nonzero coefficients only; `cap` bounds every exponent.
    pub fn new(coeffs: impl IntoIterator<Item = (Vec<u32>, BigInt)>, cap: Vec<u32>) -> Self {
        let mut map = BTreeMap::new();
        for (e, c) in coeffs {
            assert_eq!(e.len(), cap.len(), "exponent length must match the cap");
            *map.entry(e).or_insert_with(BigInt::zero) += c;
        }
        map.retain(|_, c: &mut BigInt| !c.is_zero());
        GeneratingNumerator { coeffs: map, cap }
    }

    pub fn k(&self) -> usize {
        self.cap.len()
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.coeffs
    }

    /// The part degree `‖m̄‖` of the staircase corner.
    pub fn cap(&self) -> &[u32] {
        &self.cap
    }

    /// `R(1, …, 1)`.
    pub fn at_ones(&self) -> BigInt {
        self.coeffs.values().sum()
    }
}

/// `Π_j (1 − Y_j) · Σ_ū f(ū) Ȳ^ū` truncated to `ū ⪯ corner`, then collapsed
/// along `partition`.
///
/// The differences are taken one coordinate at a time on the box `[0̄, corner]`.
pub fn numerator_from_table(
    table: &DecreasingTable,
    corner: &MultiIndex,
    partition: &Partition,
) -> Result<GeneratingNumerator, GrowthError> {
    if corner.len() != table.m() || partition.m() != table.m() {
        return Err(GrowthError::Input(format!(
            "corner {corner:?}, partition of {} and table of {} coordinates disagree",
            partition.m(),
            table.m()
        )));
    }
    if !corner.precedes(table.bound()) {
        return Err(GrowthError::Input(format!(
            "the table box {:?} does not cover the corner {corner:?}",
            table.bound()
        )));
    }
    let points: Vec<MultiIndex> = box_points(corner.entries()).collect();
    let mut h: BTreeMap<MultiIndex, BigInt> = points
        .iter()
        .map(|u| (u.clone(), BigInt::from(table.get(u).expect("inside box"))))
        .collect();
    for j in 0..table.m() {
        let mut next = BTreeMap::new();
        for u in &points {
            let prev = u
                .minus_unit(j)
                .map(|p| h[&p].clone())
                .unwrap_or_else(BigInt::zero);
            next.insert(u.clone(), &h[u] - prev);
        }
        h = next;
    }
    let cap = partition.part_degree(corner)?;
    let collapsed = h
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(u, c)| (partition.part_degree(&u).expect("length checked"), c));
    Ok(GeneratingNumerator::new(collapsed, cap))
}
