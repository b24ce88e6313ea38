use std::collections::HashMap;

use super::CouplingTable;
use crate::error::Result;
use crate::halfint::{phase, HalfInt};
use crate::matrix::C64;
use crate::standard::sixj;

/// Recoupling in the `{J^2, U_r}` basis with a shared coupling-table cache.
pub struct RecouplingContext {
    r: f64,
    tables: HashMap<(i32, i32, i32), CouplingTable>,
}

impl RecouplingContext {
    pub fn new(r: f64) -> Self {
        RecouplingContext {
            r,
            tables: HashMap::new(),
        }
    }

    fn table(&mut self, j1: HalfInt, j2: HalfInt, j: HalfInt) -> Result<&CouplingTable> {
        let key = (j1.twice, j2.twice, j.twice);
        if !self.tables.contains_key(&key) {
            let t = CouplingTable::new(j1, j2, j, self.r)?;
            self.tables.insert(key, t);
        }
        Ok(&self.tables[&key])
    }

    /// `<(j1 j2) j12, j3; j alpha | j1, (j2 j3) j23; j alpha>` for every
    /// `alpha` of `j`, contracted from four non-standard coupling coefficients.
    pub fn recoupling_coefficients(
        &mut self,
        j1: HalfInt,
        j2: HalfInt,
        j3: HalfInt,
        j12: HalfInt,
        j23: HalfInt,
        j: HalfInt,
    ) -> Result<Vec<C64>> {
        let (d1, d2, d3) = (j1.dim(), j2.dim(), j3.dim());
        let (d12, d23) = (j12.dim(), j23.dim());
        let t12 = self.table(j1, j2, j12)?.clone();
        let t12_3 = self.table(j12, j3, j)?.clone();
        let t23 = self.table(j2, j3, j23)?.clone();
        let t1_23 = self.table(j1, j23, j)?.clone();

        let mut out = Vec::with_capacity(j.dim());
        for s in 0..j.dim() {
            let mut total = C64::new(0.0, 0.0);
            for s1 in 0..d1 {
                for s2 in 0..d2 {
                    for s3 in 0..d3 {
                        let left: C64 = (0..d12).map(|s12| t12.get(s1, s2, s12) * t12_3.get(s12, s3, s)).sum();
                        let right: C64 = (0..d23).map(|s23| t23.get(s2, s3, s23) * t1_23.get(s1, s23, s)).sum();
                        total += left.conj() * right;
                    }
                }
            }
            out.push(total);
        }
        Ok(out)
    }

    /// Largest deviation of the contracted recoupling coefficient from
    /// `(-1)^{j1+j2+j3+j} sqrt((2j12+1)(2j23+1)) {j1 j2 j12; j3 j j23}`.
    pub fn invariance_residual(
        &mut self,
        j1: HalfInt,
        j2: HalfInt,
        j3: HalfInt,
        j12: HalfInt,
        j23: HalfInt,
        j: HalfInt,
    ) -> Result<f64> {
        for x in [j1, j2, j3, j12, j23, j] {
            HalfInt::spin(x.twice)?;
        }
        let six = sixj(j1, j2, j12, j3, j, j23).to_f64();
        let expected = if six == 0.0 {
            0.0
        } else {
            let sign = f64::from(phase(j1.twice + j2.twice + j3.twice + j.twice));
            sign * f64::from((j12.twice + 1) * (j23.twice + 1)).sqrt() * six
        };
        let contracted = self.recoupling_coefficients(j1, j2, j3, j12, j23, j)?;
        Ok(contracted
            .iter()
            .map(|z| (z - C64::new(expected, 0.0)).norm())
            .fold(0.0, f64::max))
    }
}

/// Recoupling residual at a single `r`; see [`RecouplingContext::invariance_residual`].
pub fn recoupling_invariance_check(
    j1: HalfInt,
    j2: HalfInt,
    j3: HalfInt,
    j12: HalfInt,
    j23: HalfInt,
    j: HalfInt,
    r: f64,
) -> Result<f64> {
    RecouplingContext::new(r).invariance_residual(j1, j2, j3, j12, j23, j)
}
