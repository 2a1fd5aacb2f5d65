//! Chern characters and total Chern classes on `C x Pic`, related by Newton's
//! identities with power sums `p_k = k! ch_k`.

use crate::arith::{inv_factorial, Scalar};
use crate::chow::two_factor::ChowElement2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChernKind {
    Character,
    Classes,
}

/// A graded characteristic class: `components[k]` is the degree-`k` part, for
/// `k = 0..=g+1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChernData<S> {
    pub kind: ChernKind,
    pub rank: S,
    pub components: Vec<ChowElement2<S>>,
}

fn graded<S: Scalar>(x: &ChowElement2<S>) -> Vec<ChowElement2<S>> {
    (0..=x.top_degree()).map(|k| x.homogeneous_part(k)).collect()
}

impl<S: Scalar> ChernData<S> {
    /// Reads a Chern character off a ring element; the rank is its constant term.
    pub fn character(ch: &ChowElement2<S>) -> Self {
        ChernData {
            kind: ChernKind::Character,
            rank: ch.constant_term(),
            components: graded(ch),
        }
    }

    /// Total Chern class `c` of a bundle of the given rank.
    pub fn classes(rank: S, c: &ChowElement2<S>) -> Self {
        ChernData {
            kind: ChernKind::Classes,
            rank,
            components: graded(c),
        }
    }

    pub fn genus(&self) -> usize {
        self.components[0].genus()
    }

    pub fn component(&self, k: usize) -> ChowElement2<S> {
        self.components
            .get(k)
            .cloned()
            .unwrap_or_else(|| ChowElement2::zero(self.genus()))
    }

    /// Sum of all components.
    pub fn total(&self) -> ChowElement2<S> {
        self.components
            .iter()
            .cloned()
            .fold(ChowElement2::zero(self.genus()), |acc, x| acc + x)
    }
}

/// Total Chern class from a Chern character:
/// `k c_k = sum_{i=1}^k (-1)^(i-1) c_{k-i} p_i`.
pub fn chern_classes_from_ch<S: Scalar>(ch: &ChernData<S>) -> ChernData<S> {
    if ch.kind == ChernKind::Classes {
        return ch.clone();
    }
    let g = ch.genus();
    let top = ch.components.len();
    let power_sums: Vec<ChowElement2<S>> = (0..top)
        .map(|k| ch.component(k).scale(&(S::one() / inv_factorial::<S>(k as i64))))
        .collect();
    let mut c = vec![ChowElement2::one(g)];
    for k in 1..top {
        let mut acc = ChowElement2::zero(g);
        for i in 1..=k {
            let term = c[k - i].clone() * power_sums[i].clone();
            acc = if i % 2 == 1 { acc + term } else { acc - term };
        }
        c.push(acc.scale(&S::ratio(1, k as i64)));
    }
    ChernData {
        kind: ChernKind::Classes,
        rank: ch.rank.clone(),
        components: c,
    }
}

/// Inverse of [`chern_classes_from_ch`]:
/// `p_k = (-1)^(k-1) (k c_k - sum_{i=1}^{k-1} (-1)^(i-1) c_{k-i} p_i)`.
pub fn ch_from_chern_classes<S: Scalar>(c: &ChernData<S>) -> ChernData<S> {
    if c.kind == ChernKind::Character {
        return c.clone();
    }
    let g = c.genus();
    let top = c.components.len();
    let mut power_sums: Vec<ChowElement2<S>> = vec![ChowElement2::constant(g, c.rank.clone())];
    for k in 1..top {
        let mut acc = c.component(k).scale(&S::from_int(k as i64));
        for i in 1..k {
            let term = c.component(k - i) * power_sums[i].clone();
            acc = if i % 2 == 1 { acc - term } else { acc + term };
        }
        power_sums.push(if k % 2 == 1 { acc } else { -acc });
    }
    let components = power_sums
        .into_iter()
        .enumerate()
        .map(|(k, p)| if k == 0 { p } else { p.scale(&inv_factorial::<S>(k as i64)) })
        .collect();
    ChernData {
        kind: ChernKind::Character,
        rank: c.rank.clone(),
        components,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::two_factor::Part;
    use crate::Rational;
    use proptest::prelude::*;

    type E = ChowElement2<Rational>;

    fn q(a: i64, b: i64) -> Rational {
        Rational::ratio(a, b)
    }

    #[test]
    fn rank_only_has_trivial_classes() {
        let ch = ChernData::character(&E::constant(3, q(5, 1)));
        assert_eq!(chern_classes_from_ch(&ch).total(), E::one(3));
    }

    #[test]
    fn line_bundle_character() {
        // ch = e^theta gives c = 1 + theta
        let g = 4;
        let ch = ChernData::character(&E::exp_theta(g));
        let c = chern_classes_from_ch(&ch);
        assert_eq!(c.component(1), E::theta_power(g, 1, q(1, 1)));
        assert_eq!(c.total(), E::one(g) + E::theta_power(g, 1, q(1, 1)));
    }

    #[test]
    fn truncated_character_first_class() {
        let g = 3;
        let ch = ChernData::character(&(E::one(g) + E::theta_power(g, 1, q(1, 1))));
        let c = chern_classes_from_ch(&ch);
        assert_eq!(c.component(1), E::theta_power(g, 1, q(1, 1)));
    }

    #[test]
    fn inverse_bundle_of_theta() {
        // c(E) = e^(-theta) for the pushed-forward Poincare bundle; its inverse is e^theta
        let g = 3;
        let c = ChernData::classes(q(7, 1), &E::exp_theta(g).scale(&q(1, 1)));
        let back = chern_classes_from_ch(&ch_from_chern_classes(&c));
        assert_eq!(back, c);
    }

    fn element(g: usize) -> impl Strategy<Value = E> {
        prop::collection::vec((-6i64..=6, 1i64..=4), 3 * (g + 1)).prop_map(move |cs| {
            cs.into_iter().enumerate().fold(E::zero(g), |x, (idx, (a, b))| {
                let part = [Part::Theta, Part::Eta, Part::Gamma][idx / (g + 1)];
                x.with_term(part, idx % (g + 1), q(a, b))
            })
        })
    }

    proptest! {
        #[test]
        fn conversions_round_trip(x in element(3)) {
            let ch = ChernData::character(&x);
            let c = chern_classes_from_ch(&ch);
            prop_assert_eq!(ch_from_chern_classes(&c), ch);
        }
    }
}
