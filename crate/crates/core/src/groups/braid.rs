use super::{GroupError, GroupPresentation, Word};

/// Number of strands used by a braid word: one more than the largest
/// generator index.
pub fn strand_count(braid: &[i64]) -> usize {
    braid.iter().map(|b| b.unsigned_abs() as usize).max().unwrap_or(0) + 1
}

/// Number of components of the closure of the braid.
pub fn closure_components(braid: &[i64]) -> usize {
    let k = strand_count(braid);
    let mut perm: Vec<usize> = (0..k).collect();
    for &b in braid {
        let i = b.unsigned_abs() as usize - 1;
        perm.swap(i, i + 1);
    }
    let mut seen = vec![false; k];
    let mut cycles = 0;
    for s in 0..k {
        if seen[s] {
            continue;
        }
        cycles += 1;
        let mut j = s;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
        }
    }
    cycles
}

/// Image of the free-group automorphism of the Artin action for one braid
/// letter, applied to a word.
fn act(letter: i64, images: &[Word]) -> Vec<Word> {
    let i = letter.unsigned_abs() as usize - 1;
    let mut out = images.to_vec();
    let (xi, xj) = (Word::generator(i), Word::generator(i + 1));
    let mut sub: Vec<Word> = (0..images.len()).map(Word::generator).collect();
    if letter > 0 {
        // x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i
        sub[i] = xj.conjugate_by(&xi);
        sub[i + 1] = xi;
    } else {
        // x_i -> x_{i+1}, x_{i+1} -> x_{i+1}^-1 x_i x_{i+1}
        sub[i] = xj.clone();
        sub[i + 1] = xi.conjugate_by(&xj.inverse());
    }
    for w in out.iter_mut() {
        *w = w.substitute(&sub);
    }
    out
}

/// Knot group of the closure of a braid, as the deficiency-one presentation
/// `<x_1..x_k | beta(x_i) = x_i, i < k>` from the Artin action.
///
/// Letters are signed 1-based generator indices: `2` is the second Artin
/// generator and `-2` its inverse.
pub fn braid_to_knot_group(braid: &[i64]) -> Result<GroupPresentation, GroupError> {
    if braid.contains(&0) {
        return Err(GroupError::InvalidBraidLetter);
    }
    let components = closure_components(braid);
    if components != 1 {
        return Err(GroupError::NotAKnot { components });
    }
    let k = strand_count(braid);
    let mut images: Vec<Word> = (0..k).map(Word::generator).collect();
    for &b in braid {
        images = act(b, &images);
    }
    let relators = (0..k - 1).map(|i| images[i].concat(&Word::power(i, -1))).collect();
    GroupPresentation::with_default_names(k, relators)
}
