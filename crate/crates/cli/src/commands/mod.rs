pub mod area;
pub mod check;
pub mod figure;
pub mod sample;

use catgame_core::MapResult;
use catgame_core::Classification;

/// Value of the `class` column: the map failure if any, else the preference class.
pub fn class_label(map: &MapResult, class: Classification) -> String {
    match map {
        MapResult::SingularSystem => "singular".to_owned(),
        MapResult::NoValidFrequencies(_) => "out-of-simplex".to_owned(),
        MapResult::Frequencies(_) => class.to_string(),
    }
}
