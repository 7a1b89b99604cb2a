//! Brute-force reference implementations.
//!
//! Everything here enumerates assignments directly and is exponential
//! in the variable count; it exists to check the polynomial-per-node
//! DP against first principles on small instances, so none of it
//! shares code with the DP engine.

use crate::dp::{Semiring, ShapeQuad};
use crate::formula::{CnfFormula, Sign, SignedGraph, VertexKind};
use crate::gf2::{BitVector, Subspace};
use num_bigint::BigUint;

#[derive(thiserror::Error, Debug, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {vars} variables; the brute-force cap is {max}")]
    TooManyVariables { vars: u32, max: u32 },
}

fn assignment_satisfies(f: &CnfFormula, clause: usize, mask: u64) -> bool {
    f.clauses()[clause].iter().any(|lit| {
        let bit = mask >> (lit.var - 1) & 1 == 1;
        bit == lit.positive
    })
}

/// Exact model count by enumerating all assignments.
pub fn brute_force_count(f: &CnfFormula, max_vars: u32) -> Result<BigUint, OracleError> {
    if f.num_vars() > max_vars as usize {
        return Err(OracleError::TooManyVariables { vars: f.num_vars() as u32, max: max_vars });
    }
    let mut models = 0u64;
    for mask in 0..1u64 << f.num_vars() {
        if (0..f.num_clauses()).all(|c| assignment_satisfies(f, c, mask)) {
            models += 1;
        }
    }
    Ok(BigUint::from(models))
}

/// Maximum number of simultaneously satisfiable clauses by
/// enumerating all assignments.
pub fn brute_force_max_sat(f: &CnfFormula, max_vars: u32) -> Result<u64, OracleError> {
    if f.num_vars() > max_vars as usize {
        return Err(OracleError::TooManyVariables { vars: f.num_vars() as u32, max: max_vars });
    }
    let mut best = 0u64;
    for mask in 0..1u64 << f.num_vars() {
        let sat = (0..f.num_clauses()).filter(|&c| assignment_satisfies(f, c, mask)).count() as u64;
        best = best.max(sat);
    }
    Ok(best)
}

/// Build one node's table straight from the definition: enumerate the
/// assignments of the variables below the node; per assignment the
/// span pair is the closure of the labels of true (positive sign)
/// resp. false (negative sign) variables, and per demanded expectation
/// pair the defect is the number of clauses below that are neither
/// satisfied by the assignment inside the node nor non-orthogonal to
/// the expectation in some sign.
///
/// `labels` lists the vertices below the node with their label bits
/// per sign, as produced by
/// [`crate::parsetree::evaluate_with_labels`]. The result is sorted
/// the same way as [`crate::dp::DpTable::canonical_entries`], so equal
/// tables compare equal structurally.
pub fn brute_force_shape_table<V: Semiring>(
    g: &SignedGraph,
    t_pos: usize,
    t_neg: usize,
    labels: &[(u32, u64, u64)],
    demand: &[(Subspace, Subspace)],
    max_vars: u32,
) -> Result<Vec<(ShapeQuad, V)>, OracleError> {
    let variables: Vec<&(u32, u64, u64)> =
        labels.iter().filter(|(v, _, _)| matches!(g.kind(*v), VertexKind::Variable(_))).collect();
    let clauses: Vec<&(u32, u64, u64)> =
        labels.iter().filter(|(v, _, _)| matches!(g.kind(*v), VertexKind::Clause(_))).collect();
    if variables.len() as u32 > max_vars {
        return Err(OracleError::TooManyVariables { vars: variables.len() as u32, max: max_vars });
    }

    // whether a clause can rely on the outside, per demanded pair;
    // independent of the assignment
    let expects: Vec<Vec<bool>> = clauses
        .iter()
        .map(|&&(_, lp, ln)| {
            demand
                .iter()
                .map(|(pp, pn)| {
                    !pp.is_orthogonal_to(&BitVector::from_bits(lp, t_pos))
                        || !pn.is_orthogonal_to(&BitVector::from_bits(ln, t_neg))
                })
                .collect()
        })
        .collect();

    let mut table: Vec<(ShapeQuad, V)> = Vec::new();
    let mut fold = |key: ShapeQuad, v: V| {
        if v.is_zero() {
            return;
        }
        match table.iter_mut().find(|(k, _)| *k == key) {
            Some((_, slot)) => slot.add_assign(&v),
            None => table.push((key, v)),
        }
    };

    for mask in 0..1u64 << variables.len() {
        let mut pos_vecs = Vec::new();
        let mut neg_vecs = Vec::new();
        for (i, &&(_, lp, ln)) in variables.iter().enumerate() {
            if mask >> i & 1 == 1 {
                pos_vecs.push(BitVector::from_bits(lp, t_pos));
            } else {
                neg_vecs.push(BitVector::from_bits(ln, t_neg));
            }
        }
        let sigma_pos = Subspace::span(&pos_vecs, t_pos);
        let sigma_neg = Subspace::span(&neg_vecs, t_neg);

        let satisfied_inside: Vec<bool> = clauses
            .iter()
            .map(|&&(c, _, _)| {
                variables.iter().enumerate().any(|(i, &&(v, _, _))| {
                    if mask >> i & 1 == 1 {
                        g.has_edge(Sign::Pos, c, v)
                    } else {
                        g.has_edge(Sign::Neg, c, v)
                    }
                })
            })
            .collect();

        for (pi_idx, (pp, pn)) in demand.iter().enumerate() {
            let defect = satisfied_inside
                .iter()
                .enumerate()
                .filter(|&(c, &sat)| !sat && !expects[c][pi_idx])
                .count() as u64;
            fold(
                (sigma_pos.clone(), sigma_neg.clone(), pp.clone(), pn.clone()),
                V::from_defect(defect),
            );
        }
    }

    table.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(table)
}
