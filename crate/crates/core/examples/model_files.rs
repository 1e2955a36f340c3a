//! Writing a builtin model to JSON, reading it back and running the cone on it.
use symsemi::complexes::{betti, cone};
use symsemi::files::{load_model, ModelFile};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let prepared = load_model("builtin:kodaira_thurston")?;
    let text = serde_json::to_string_pretty(&ModelFile::from_prepared(&prepared))?;
    println!("{text}");
    let back = ModelFile::parse(&text)?.prepare("from file")?;
    let b = betti(&cone(&back.complex, &back.omega, 0)?);
    println!(
        "{}: cone betti {:?}, k = {}",
        back.name,
        b.values(),
        b.semi_characteristic()
    );
    Ok(())
}
