#pragma once

#include <string>

#include "wikimrd/mrd_store.hpp"

namespace wikimrd {

/// Indented plain-text rendering of a word card.
std::string render_word_card_text(const WordCard& card);

/// The same card as one JSON document.
std::string render_word_card_json(const WordCard& card);

}  // namespace wikimrd
