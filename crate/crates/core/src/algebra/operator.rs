use super::{WAlgebra, WElem};
use crate::error::{Error, Result};

/// An `R`-equivariant map `Rⁿ → R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorTerm {
    /// `Σ aᵢ·(−)ᵢ`; on lattices the sum is a join.
    Linear(Vec<WElem>),
    /// `a·(−)ⱼ`, the only shape available without addition; `None` means `a = 1`.
    Scaled {
        arity: usize,
        index: usize,
        multiplier: Option<WElem>,
    },
}

impl OperatorTerm {
    pub fn identity() -> Self {
        OperatorTerm::Scaled {
            arity: 1,
            index: 0,
            multiplier: None,
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            OperatorTerm::Linear(c) => c.len(),
            OperatorTerm::Scaled { arity, .. } => *arity,
        }
    }

    pub fn evaluate(&self, r: &WAlgebra, args: &[WElem]) -> Result<WElem> {
        if args.len() != self.arity() {
            return Err(Error::CheckFailed(format!(
                "operator of arity {} applied to {} arguments",
                self.arity(),
                args.len()
            )));
        }
        match self {
            // the empty sum is the constant operator 0, present in every backend
            OperatorTerm::Linear(coeffs) if coeffs.is_empty() => Ok(r.zero()),
            OperatorTerm::Linear(coeffs) => {
                let f = r
                    .as_finite()
                    .filter(|f| f.kind().has_addition())
                    .ok_or_else(|| Error::Unsupported("linear terms need an additive backend".into()))?;
                let mut acc = f.zero();
                for (a, x) in coeffs.iter().zip(args) {
                    let (WElem::Fin(a), WElem::Fin(x)) = (a, x) else {
                        return Err(Error::MixedParents);
                    };
                    acc = f.add(acc, f.mul(*a, *x)).expect("additive backend");
                }
                Ok(WElem::Fin(acc))
            }
            OperatorTerm::Scaled { index, multiplier, .. } => Ok(match multiplier {
                None => args[*index].clone(),
                Some(a) => r.mul(a, &args[*index]),
            }),
        }
    }

    /// Checks `ψ(r·v) = r·ψ(v)` on every given scalar and argument tuple.
    pub fn is_equivariant_on(&self, r: &WAlgebra, scalars: &[WElem], tuples: &[Vec<WElem>]) -> Result<bool> {
        for v in tuples {
            let base = self.evaluate(r, v)?;
            for s in scalars {
                let scaled: Vec<WElem> = v.iter().map(|x| r.mul(s, x)).collect();
                if self.evaluate(r, &scaled)? != r.mul(s, &base) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn display(&self, r: &WAlgebra) -> String {
        match self {
            OperatorTerm::Linear(coeffs) => coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| format!("{}·(−){}", r.name(a), i + 1))
                .collect::<Vec<_>>()
                .join(" + "),
            OperatorTerm::Scaled { index, multiplier, .. } => match multiplier {
                None => format!("(−){}", index + 1),
                Some(a) => format!("{}·(−){}", r.name(a), index + 1),
            },
        }
    }
}

/// Extends a term over `R` to `R_f`: coefficients are pushed along `R → R_f`.
///
/// On the image of `R` the extension agrees with the original term, and it is
/// multilinear over `R_f` since the coefficients are constants.
pub fn extend_operator_to_localization(phi: &OperatorTerm, r: &WAlgebra, f: &WElem) -> (WAlgebra, OperatorTerm) {
    let (rf, h) = r.localize(f);
    let term = match phi {
        OperatorTerm::Linear(coeffs) => OperatorTerm::Linear(coeffs.iter().map(|a| h.apply(&rf, a)).collect()),
        OperatorTerm::Scaled { arity, index, multiplier } => OperatorTerm::Scaled {
            arity: *arity,
            index: *index,
            multiplier: multiplier.as_ref().map(|a| h.apply(&rf, a)),
        },
    };
    (rf, term)
}
