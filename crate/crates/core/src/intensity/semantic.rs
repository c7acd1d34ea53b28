use crate::error::{Error, Result};

/// Source of unit-normalized sentence embeddings.
pub trait EmbeddingProvider: Send + Sync {
    fn embed(&self, texts: &[String]) -> Result<Vec<Vec<f64>>>;
}

const UNIT_TOLERANCE: f64 = 1e-3;

fn check_unit(v: &[f64]) -> Result<()> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > UNIT_TOLERANCE {
        return Err(Error::ProviderContract(format!(
            "embedding norm {norm} is not 1 ± {UNIT_TOLERANCE}"
        )));
    }
    Ok(())
}

/// Inner product of two unit vectors, clamped to [-1, 1].
pub fn inner_product(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::ProviderContract(format!(
            "embedding dimensions differ: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    check_unit(a)?;
    check_unit(b)?;
    Ok(a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>().clamp(-1.0, 1.0))
}

/// Embedding inner product between two texts.
pub fn semantic_similarity(a: &str, b: &str, provider: &dyn EmbeddingProvider) -> Result<f64> {
    let vectors = provider.embed(&[a.to_string(), b.to_string()])?;
    let [va, vb] = vectors.as_slice() else {
        return Err(Error::ProviderContract(format!(
            "expected 2 embeddings, got {}",
            vectors.len()
        )));
    };
    inner_product(va, vb)
}
