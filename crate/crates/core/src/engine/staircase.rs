//! Level-set staircases of a decreasing table.

use crate::multiindex::{box_points, MultiIndex};

use super::table::DecreasingTable;
use super::GrowthError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StaircaseStatus {
    /// Every coordinate of the corner has `window` spare columns in the box
    /// and the table is constant along them.
    WindowCertified,
    /// Some drop may lie past the box.
    BoxTruncated,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaircaseCertificate {
    /// `minimal[n]` holds the `⪯`-minimal points of `{ū ⪯ box : f(ū) ≤ n}`.
    pub minimal: Vec<Vec<MultiIndex>>,
    /// Coordinatewise max over all minimal points (`0̄` if there are none).
    pub corner: MultiIndex,
    pub status: StaircaseStatus,
    pub window: u32,
}

impl StaircaseCertificate {
    pub fn is_certified(&self) -> bool {
        self.status == StaircaseStatus::WindowCertified
    }

    /// Coordinates whose spare window does not fit in `bound`.
    pub fn short_coordinates(&self, bound: &MultiIndex) -> Vec<usize> {
        (0..bound.len())
            .filter(|&i| self.corner.entries()[i] + self.window > bound.entries()[i])
            .collect()
    }
}

/// Computes the staircase of every level set `{f ≤ n}`, `n < f(0̄)`.
pub fn detect_stabilization(
    table: &DecreasingTable,
    window: u32,
) -> Result<StaircaseCertificate, GrowthError> {
    if window == 0 {
        return Err(GrowthError::Input("window width must be at least 1".into()));
    }
    if let Some((u, v)) = table.violations().first() {
        return Err(GrowthError::Precondition(format!(
            "the table is not decreasing: f{u:?} < f{v:?}"
        )));
    }
    let top = table.at_origin();
    let mut minimal = vec![Vec::new(); top as usize];
    for (u, value) in table.points() {
        if value >= top {
            continue;
        }
        // u is minimal in {f ≤ n} iff every predecessor has f > n,
        // i.e. for n in value..min(pred values).
        let pred_min = (0..u.len())
            .filter_map(|i| u.minus_unit(i))
            .map(|p| table.get(&p).expect("predecessor in box"))
            .min()
            .unwrap_or(top);
        for n in value..pred_min.min(top) {
            minimal[n as usize].push(u.clone());
        }
    }
    let m = table.m();
    let corner = minimal
        .iter()
        .flatten()
        .fold(MultiIndex::zero(m), |acc, u| acc.join(u));

    let bound = table.bound();
    let fits = (0..m).all(|i| corner.entries()[i] + window <= bound.entries()[i]);
    let clamp_ok = fits && {
        let reach: Vec<u32> = (0..m)
            .map(|i| (corner.entries()[i] + window).min(bound.entries()[i]))
            .collect();
        let all_match = box_points(&reach).all(|u| {
            let clamped = MultiIndex::new(
                u.entries()
                    .iter()
                    .zip(corner.entries())
                    .map(|(&x, &c)| x.min(c))
                    .collect(),
            );
            table.get(&u) == table.get(&clamped)
        });
        all_match
    };
    Ok(StaircaseCertificate {
        minimal,
        corner,
        status: if clamp_ok {
            StaircaseStatus::WindowCertified
        } else {
            StaircaseStatus::BoxTruncated
        },
        window,
    })
}
