use std::fmt;
use std::ops::Mul;

use super::GroupError;

/// A permutation of the points `0..degree`.
///
/// Products act on the right: `point^(p*q) = (point^p)^q`, so `p * q` applies
/// `p` first. Ordering is lexicographic on the image sequence, which is what
/// canonical coset representatives are minimised over.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from its image sequence, rejecting non-bijections.
    pub fn from_images(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(GroupError::NotABijection(images));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation from disjoint cycles over 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(GroupError::PointOutOfRange { point: p, degree });
                }
                if touched[p] {
                    return Err(GroupError::Parse(format!(
                        "point {} appears twice in cycle notation",
                        p + 1
                    )));
                }
                touched[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of `point`.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Perm { images }
    }

    /// The conjugate `h^-1 * self * h`.
    pub fn conjugate_by(&self, h: &Perm) -> Perm {
        h.inverse().then(self).then(h)
    }

    pub fn pow(&self, exp: u64) -> Perm {
        let mut result = Perm::identity(self.degree());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        result
    }

    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.degree()];
        let mut order = 1usize;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p];
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }

    /// Disjoint cycles of length at least two, each starting at its least
    /// point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
            }
            out.push(cycle);
        }
        out
    }

    /// Parses disjoint-cycle notation with 1-based points, e.g. `(1 2 3)(5 4 6)`.
    /// The identity may be written `()` or as an empty string.
    pub fn parse(text: &str, degree: usize) -> Result<Self, GroupError> {
        Self::parse_with(text, degree, |tok| {
            tok.parse::<usize>()
                .ok()
                .filter(|&p| p >= 1)
                .map(|p| p - 1)
        })
    }

    /// Parses cycle notation where each point token is resolved by `resolve`
    /// into a 0-based point.
    pub fn parse_with<F>(text: &str, degree: usize, resolve: F) -> Result<Self, GroupError>
    where
        F: Fn(&str) -> Option<usize>,
    {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let Some(after_open) = rest.strip_prefix('(') else {
                return Err(GroupError::Parse(format!(
                    "expected '(' in cycle notation {text:?}"
                )));
            };
            let Some(close) = after_open.find(')') else {
                return Err(GroupError::Parse(format!("unclosed cycle in {text:?}")));
            };
            let body = &after_open[..close];
            let mut cycle = Vec::new();
            for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let p = resolve(tok).ok_or_else(|| {
                    GroupError::Parse(format!("bad point {tok:?} in {text:?}"))
                })?;
                cycle.push(p);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = after_open[close + 1..].trim_start();
        }
        Perm::from_cycles(degree, &cycles)
    }

    /// Formats in cycle notation, naming each 0-based point with `name`.
    pub fn format_with<F>(&self, name: F) -> String
    where
        F: Fn(usize) -> String,
    {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut out = String::new();
        for cycle in cycles {
            out.push('(');
            let names: Vec<String> = cycle.into_iter().map(&name).collect();
            out.push_str(&names.join(" "));
            out.push(')');
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(|p| (p + 1).to_string()))
    }
}

impl Mul for &Perm {
    type Output = Perm;

    fn mul(self, rhs: &Perm) -> Perm {
        self.then(rhs)
    }
}

impl Mul for Perm {
    type Output = Perm;

    fn mul(self, rhs: Perm) -> Perm {
        self.then(&rhs)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Perm {
        Perm::parse(s, 6).unwrap()
    }

    #[test]
    fn right_action_composition() {
        let sigma = p("(1 2 3)(5 4 6)");
        let rho = p("(2 3)(4 5)");
        // point 1 -> 2 under sigma, then 2 -> 3 under rho
        assert_eq!((&sigma * &rho).apply(0), 2);
        assert_eq!((&rho * &sigma).apply(0), 1);
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(p("(1 2 3)(5 4 6)").to_string(), "(1 2 3)(4 6 5)");
        assert_eq!(p("()").to_string(), "()");
        assert_eq!(p("").to_string(), "()");
        assert_eq!(p("(1,2)").to_string(), "(1 2)");
        assert!(Perm::parse("(1 7)", 6).is_err());
        assert!(Perm::parse("(1 2)(2 3)", 6).is_err());
        assert!(Perm::parse("(1 2", 6).is_err());
        assert!(Perm::parse("1 2", 6).is_err());
        assert!(Perm::parse("(0 1)", 6).is_err());
    }

    #[test]
    fn from_images_rejects_non_bijection() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3, 1]).is_err());
        assert!(Perm::from_images(vec![2, 0, 1]).is_ok());
    }

    #[test]
    fn order_inverse_pow() {
        let sigma = p("(1 2 3)(5 4 6)");
        assert_eq!(sigma.order(), 3);
        assert!(sigma.pow(3).is_identity());
        assert_eq!(sigma.pow(2), sigma.inverse());
        assert!((&sigma * &sigma.inverse()).is_identity());
        assert_eq!(p("(1 2)(3 4 5)").order(), 6);
    }

    #[test]
    fn conjugation_is_h_inverse_g_h() {
        let g = p("(1 2)");
        let h = p("(1 3)");
        // (1 2)^(1 3) relabels points by h: (3 2)
        assert_eq!(g.conjugate_by(&h), p("(2 3)"));
    }
}
