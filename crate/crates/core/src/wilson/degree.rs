use super::coeffs::lambda;
use super::families::{eval_family, FamilyTag};
use super::Params;
use crate::error::{Error, Result};
use crate::field::Field;

/// Degree of `x ↦ P_n(x)` as a function of `λ(q^x; c)`, read off the
/// divided-difference table over `nodes`.
///
/// Returns the largest order `k` with a nonzero divided difference
/// `P[λ_0, …, λ_k]` together with that value. Needs at least `n + 2` nodes
/// so that a vanishing order `n + 1` difference is actually observed.
pub fn p_degree_profile<F: Field>(n: usize, params: &Params<F>, nodes: &[usize]) -> Result<(usize, F)> {
    if nodes.len() < n + 2 {
        return Err(Error::InvalidInput(format!(
            "degree profile of P_{n} needs {} nodes, got {}",
            n + 2,
            nodes.len()
        )));
    }
    let abscissae = nodes
        .iter()
        .map(|&x| lambda(&params.qp(x as i64), &params.c, &params.q))
        .collect::<Result<Vec<F>>>()?;
    for i in 0..abscissae.len() {
        for j in i + 1..abscissae.len() {
            if abscissae[i] == abscissae[j] {
                return Err(Error::DuplicateAbscissa(nodes[i] as i64, nodes[j] as i64));
            }
        }
    }
    let mut table = nodes
        .iter()
        .map(|&x| eval_family(FamilyTag::P, n, x, params))
        .collect::<Result<Vec<F>>>()?;
    // after pass k, table[k] holds P[λ_0, …, λ_k]
    let mut top = vec![table[0].clone()];
    for k in 1..table.len() {
        for i in (k..table.len()).rev() {
            let num = table[i].clone() - table[i - 1].clone();
            let den = abscissae[i].clone() - abscissae[i - k].clone();
            table[i] = num.try_div(&den)?;
        }
        top.push(table[k].clone());
    }
    top.into_iter()
        .enumerate()
        .rev()
        .find(|(_, v)| !v.is_zero())
        .ok_or(Error::ZeroFunction)
}
