//! Dense table factors over discrete variables.

/// Non-negative function over the joint states of `vars`.
///
/// `vars` is sorted ascending and `values` is row-major with the last variable fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct Factor {
    vars: Vec<usize>,
    cards: Vec<usize>,
    values: Vec<f64>,
}

impl Factor {
    pub fn scalar(value: f64) -> Self {
        Factor {
            vars: Vec::new(),
            cards: Vec::new(),
            values: vec![value],
        }
    }

    /// Builds a factor from variables in arbitrary order with values laid out in that order.
    pub fn new(vars: Vec<usize>, cards: Vec<usize>, values: Vec<f64>) -> Self {
        assert_eq!(vars.len(), cards.len());
        assert_eq!(values.len(), cards.iter().product::<usize>());
        let mut perm: Vec<usize> = (0..vars.len()).collect();
        perm.sort_by_key(|&i| vars[i]);
        if perm.iter().enumerate().all(|(a, &b)| a == b) {
            return Factor {
                vars,
                cards,
                values,
            };
        }
        let sorted_vars: Vec<usize> = perm.iter().map(|&i| vars[i]).collect();
        let sorted_cards: Vec<usize> = perm.iter().map(|&i| cards[i]).collect();
        let src_strides = strides(&cards);
        let mut out = vec![0.0; values.len()];
        let mut counter = vec![0usize; vars.len()];
        for slot in out.iter_mut() {
            let src: usize = counter
                .iter()
                .zip(&perm)
                .map(|(&c, &orig)| c * src_strides[orig])
                .sum();
            *slot = values[src];
            increment(&mut counter, &sorted_cards);
        }
        Factor {
            vars: sorted_vars,
            cards: sorted_cards,
            values: out,
        }
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn contains(&self, var: usize) -> bool {
        self.vars.binary_search(&var).is_ok()
    }

    pub fn product(&self, other: &Factor) -> Factor {
        let mut vars = Vec::with_capacity(self.vars.len() + other.vars.len());
        let mut cards = Vec::with_capacity(vars.capacity());
        let (mut i, mut j) = (0, 0);
        while i < self.vars.len() || j < other.vars.len() {
            let take_self =
                j == other.vars.len() || (i < self.vars.len() && self.vars[i] <= other.vars[j]);
            if take_self {
                if j < other.vars.len() && self.vars[i] == other.vars[j] {
                    j += 1;
                }
                vars.push(self.vars[i]);
                cards.push(self.cards[i]);
                i += 1;
            } else {
                vars.push(other.vars[j]);
                cards.push(other.cards[j]);
                j += 1;
            }
        }
        let a_strides = embedded_strides(&self.vars, &self.cards, &vars);
        let b_strides = embedded_strides(&other.vars, &other.cards, &vars);
        let size: usize = cards.iter().product();
        let mut values = Vec::with_capacity(size);
        let mut counter = vec![0usize; vars.len()];
        let (mut ai, mut bi) = (0usize, 0usize);
        for _ in 0..size {
            values.push(self.values[ai] * other.values[bi]);
            // advance the odometer, updating both flat indices incrementally
            for k in (0..vars.len()).rev() {
                counter[k] += 1;
                ai += a_strides[k];
                bi += b_strides[k];
                if counter[k] < cards[k] {
                    break;
                }
                ai -= a_strides[k] * cards[k];
                bi -= b_strides[k] * cards[k];
                counter[k] = 0;
            }
        }
        Factor {
            vars,
            cards,
            values,
        }
    }

    /// Sums `var` out of the factor.
    pub fn marginalize(&self, var: usize) -> Factor {
        let Ok(pos) = self.vars.binary_search(&var) else {
            return self.clone();
        };
        let inner: usize = self.cards[pos + 1..].iter().product();
        let card = self.cards[pos];
        let outer = self.values.len() / (inner * card);
        let mut values = vec![0.0; outer * inner];
        for o in 0..outer {
            for s in 0..card {
                let base = (o * card + s) * inner;
                for k in 0..inner {
                    values[o * inner + k] += self.values[base + k];
                }
            }
        }
        let mut vars = self.vars.clone();
        let mut cards = self.cards.clone();
        vars.remove(pos);
        cards.remove(pos);
        Factor {
            vars,
            cards,
            values,
        }
    }

    /// Restricts `var` to `state` and drops it from the scope.
    pub fn reduce(&self, var: usize, state: usize) -> Factor {
        let Ok(pos) = self.vars.binary_search(&var) else {
            return self.clone();
        };
        let inner: usize = self.cards[pos + 1..].iter().product();
        let card = self.cards[pos];
        let outer = self.values.len() / (inner * card);
        let mut values = Vec::with_capacity(outer * inner);
        for o in 0..outer {
            let base = (o * card + state) * inner;
            values.extend_from_slice(&self.values[base..base + inner]);
        }
        let mut vars = self.vars.clone();
        let mut cards = self.cards.clone();
        vars.remove(pos);
        cards.remove(pos);
        Factor {
            vars,
            cards,
            values,
        }
    }
}

fn strides(cards: &[usize]) -> Vec<usize> {
    let mut s = vec![1; cards.len()];
    for i in (0..cards.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * cards[i + 1];
    }
    s
}

/// Strides of a sub-scope expressed over a super-scope (0 where the variable is absent).
fn embedded_strides(vars: &[usize], cards: &[usize], scope: &[usize]) -> Vec<usize> {
    let own = strides(cards);
    scope
        .iter()
        .map(|v| vars.binary_search(v).map(|i| own[i]).unwrap_or(0))
        .collect()
}

fn increment(counter: &mut [usize], cards: &[usize]) {
    for k in (0..counter.len()).rev() {
        counter[k] += 1;
        if counter[k] < cards[k] {
            return;
        }
        counter[k] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reorders_to_sorted_scope() {
        // f(b, a) with b in {0,1}, a in {0,1,2}; value = 10*b + a
        let f = Factor::new(vec![5, 2], vec![2, 3], vec![0., 1., 2., 10., 11., 12.]);
        assert_eq!(f.vars(), &[2, 5]);
        // now a is outer: f(a, b)
        assert_eq!(f.values(), &[0., 10., 1., 11., 2., 12.]);
    }

    #[test]
    fn product_and_marginal() {
        let pa = Factor::new(vec![0], vec![2], vec![0.8, 0.2]);
        let pba = Factor::new(vec![0, 1], vec![2, 2], vec![0.9, 0.1, 0.1, 0.9]);
        let joint = pa.product(&pba);
        assert_eq!(joint.vars(), &[0, 1]);
        let pb = joint.marginalize(0);
        assert!((pb.values()[1] - 0.26).abs() < 1e-15);
        let total = pb.marginalize(1);
        assert!((total.values()[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn product_with_disjoint_scope_is_outer() {
        let a = Factor::new(vec![3], vec![2], vec![1., 2.]);
        let b = Factor::new(vec![1], vec![3], vec![1., 10., 100.]);
        let p = a.product(&b);
        assert_eq!(p.vars(), &[1, 3]);
        assert_eq!(p.values(), &[1., 2., 10., 20., 100., 200.]);
    }

    #[test]
    fn reduce_picks_slice() {
        let f = Factor::new(vec![0, 1], vec![2, 3], vec![1., 2., 3., 4., 5., 6.]);
        assert_eq!(f.reduce(1, 2).values(), &[3., 6.]);
        assert_eq!(f.reduce(0, 1).values(), &[4., 5., 6.]);
        assert_eq!(f.reduce(9, 0), f);
    }

    #[test]
    fn scalar_product() {
        let f = Factor::new(vec![0], vec![2], vec![0.5, 0.25]);
        assert_eq!(Factor::scalar(2.0).product(&f).values(), &[1.0, 0.5]);
    }
}
