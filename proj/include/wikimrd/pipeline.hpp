#pragma once

// Page -> store ingestion: one reader, N extraction workers, and the calling
// thread as the single store writer. Results are applied in document order,
// so the store contents do not depend on the worker count.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "wikimrd/diagnostics.hpp"
#include "wikimrd/dump_ingest.hpp"
#include "wikimrd/extractors.hpp"
#include "wikimrd/lang_registry.hpp"
#include "wikimrd/mrd_store.hpp"
#include "wikimrd/segmenter.hpp"

namespace wikimrd {

struct ExtractedEntry {
    LangPosKey key;
    std::vector<Definition> definitions;
    std::vector<RelationGroup> relations;
    std::vector<TranslationBlock> translations;
};

/// Everything extracted from one page, before it touches the store.
struct PageResult {
    std::string title;
    bool filtered = false;
    std::size_t language_headings = 0;  ///< level-2 headings seen
    std::size_t language_sections = 0;  ///< of which recognized
    std::vector<ExtractedEntry> entries;
    Diagnostics diagnostics;
};

/// Filters, segments and extracts one page. Pure: safe to call concurrently.
PageResult process_page(const RawPage& page, const Profile& profile);

struct ParseSummary {
    std::size_t pages_read = 0;
    std::size_t pages_filtered = 0;
    std::size_t entry_pages = 0;             ///< pages that stored at least one entry
    std::size_t pages_without_entries = 0;
    std::size_t language_headings = 0;
    std::size_t language_sections = 0;
    std::size_t pos_sections = 0;            ///< extracted lang/POS entries offered to the store
    std::size_t lang_pos = 0;
    std::size_t meanings = 0;
    std::size_t relations = 0;
    std::size_t translation_entries = 0;
    std::map<std::string, std::size_t> diagnostics;
};

struct PipelineOptions {
    unsigned workers = 1;
    std::size_t max_in_flight = 0;  ///< pages read but not yet stored; 0 = 4 per worker
};

/// Stores `result` and updates `summary`; diagnostics move into `diagnostics`.
void apply_page(PageResult&& result, Store& store, Diagnostics& diagnostics, ParseSummary& summary);

/// Drains `source` into `store`. A DumpError (or any reader failure) is
/// rethrown after every page read before it has been stored.
ParseSummary run_pipeline(PageSource& source, const Profile& profile, Store& store, Diagnostics& diagnostics,
                          const PipelineOptions& options = {});

}  // namespace wikimrd
