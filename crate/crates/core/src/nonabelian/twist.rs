use super::action::NabAction;
use super::classes::{canonical, is_cocycle, nab_h1, NabH1};
use crate::caps::Caps;
use crate::error::{Error, Result};

/// `_cG`: same group, action `σ*(x) = c_σ σ(x) c_σ⁻¹`.
pub fn twist_group(act: &NabAction, c: &[usize]) -> Result<NabAction> {
    if !is_cocycle(act, c) {
        return Err(Error::InvalidInput("twisting table is not a cocycle".into()));
    }
    let g = act.target();
    let perms = act
        .gamma()
        .elements()
        .map(|s| {
            let (cs, ci) = (c[s], g.inv(c[s]));
            g.elements().map(|x| g.mul(g.mul(cs, act.apply(s, x)), ci)).collect()
        })
        .collect();
    Ok(NabAction::from_parts_unchecked(act.gamma().clone(), g.clone(), perms))
}

/// `a' -> (σ -> a'_σ c_σ)`, from cocycles of `_cG` to cocycles of `G`.
pub fn twist_cocycle(act: &NabAction, a: &[usize], c: &[usize]) -> Vec<usize> {
    let g = act.target();
    a.iter().zip(c).map(|(&x, &y)| g.mul(x, y)).collect()
}

/// `a -> (σ -> a_σ c_σ⁻¹)`, the inverse of [`twist_cocycle`].
pub fn untwist_cocycle(act: &NabAction, a: &[usize], c: &[usize]) -> Vec<usize> {
    let g = act.target();
    a.iter().zip(c).map(|(&x, &y)| g.mul(x, g.inv(y))).collect()
}

/// The bijection between class sets over `_cG` and over `G`, with both
/// directions tabulated on class indices.
#[derive(Clone, Debug)]
pub struct TwistBijection {
    pub twisted: NabAction,
    pub twisted_classes: NabH1,
    pub classes: NabH1,
    /// Class over `G` of the image of each class over `_cG`.
    pub forward: Vec<usize>,
    /// Class over `_cG` of the image of each class over `G`.
    pub inverse: Vec<usize>,
}

impl TwistBijection {
    /// Both composites are the identity on class indices.
    pub fn round_trips(&self) -> bool {
        self.forward.len() == self.inverse.len()
            && self.forward.iter().enumerate().all(|(i, &j)| self.inverse[j] == i)
            && self.inverse.iter().enumerate().all(|(j, &i)| self.forward[i] == j)
    }
}

pub fn twist_bijection(act: &NabAction, c: &[usize], caps: &Caps) -> Result<TwistBijection> {
    let twisted = twist_group(act, c)?;
    let twisted_classes = nab_h1(&twisted, caps)?;
    let classes = nab_h1(act, caps)?;
    let lookup = |h: &NabH1, a: &NabAction, table: Vec<usize>| -> Result<usize> {
        h.class_of(a, &table)
            .ok_or_else(|| Error::InvalidInput(format!("twisted table {:?} is not a listed class", canonical(a, &table))))
    };
    let forward = twisted_classes
        .classes
        .iter()
        .map(|k| lookup(&classes, act, twist_cocycle(act, &k.representative, c)))
        .collect::<Result<Vec<_>>>()?;
    let inverse = classes
        .classes
        .iter()
        .map(|k| lookup(&twisted_classes, &twisted, untwist_cocycle(act, &k.representative, c)))
        .collect::<Result<Vec<_>>>()?;
    Ok(TwistBijection { twisted, twisted_classes, classes, forward, inverse })
}
