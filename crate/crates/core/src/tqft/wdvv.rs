use itertools::Itertools;

use crate::algebra::{pairing_in_var, ts_exp, LaurentPoly, TSeries, VarList};
use crate::error::Result;
use crate::potential::vertex_potential;

const FREE: [&str; 4] = ["x1", "x2", "x3", "x4"];
const SHARED: &str = "m";

/// `M4 = <M3(x1, x2, m), M3(x3, x4, m)>_m` with `M3 = exp(t W)`, where `W`
/// is produced by `vertex` from the variable list and three slot names.
pub fn four_point<F>(vertex: F, order: usize) -> Result<TSeries<LaurentPoly>>
where
    F: Fn(&VarList, [&str; 3]) -> Result<LaurentPoly>,
{
    let vars = VarList::new(FREE.iter().copied().chain([SHARED]));
    let left = ts_exp(&vertex(&vars, [FREE[0], FREE[1], SHARED])?, order);
    let right = ts_exp(&vertex(&vars, [FREE[2], FREE[3], SHARED])?, order);
    pairing_in_var(&left, &right, SHARED)
}

/// True when the four-point series is invariant under every permutation
/// of its four free variables, through `t^order`.
pub fn wdvv_check_with<F>(vertex: F, order: usize) -> Result<bool>
where
    F: Fn(&VarList, [&str; 3]) -> Result<LaurentPoly>,
{
    let m4 = four_point(vertex, order)?;
    for perm in (0..4).permutations(4) {
        let permuted = m4.map(|c| c.permute_exponents(&perm))?;
        if permuted != m4 {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn wdvv_check(parity: u8, order: usize) -> Result<bool> {
    wdvv_check_with(|v, s| vertex_potential(v, s, parity), order)
}
