#include "wikimrd/pipeline.hpp"

#include <algorithm>
#include <condition_variable>
#include <deque>
#include <exception>
#include <mutex>
#include <semaphore>
#include <thread>

namespace wikimrd {

PageResult process_page(const RawPage& page, const Profile& profile) {
    PageResult result;
    result.title = page.title;
    Diagnostics& diagnostics = result.diagnostics;
    diagnostics.set_page(page.title);
    if (!keep_main(page, &diagnostics)) {
        result.filtered = true;
        return result;
    }

    scan_templates(page.text, &diagnostics);
    for (const Heading& h : scan_headings(page.text))
        if (h.level == 2) ++result.language_headings;

    const auto languages = segment_languages(page.text, profile, &diagnostics);
    result.language_sections = languages.size();
    for (const LanguageSection& language : languages) {
        for (const EtymologyBlock& etymology : segment_etymologies(language, &diagnostics)) {
            for (const PosSection& pos : segment_pos(etymology, profile, &diagnostics)) {
                ExtractedEntry entry;
                entry.key = LangPosKey{page.title, language.language, pos.pos_name, etymology.etymology_n};
                entry.definitions = extract_definitions(pos, profile.label_templates, &diagnostics);
                entry.relations = extract_relations(pos, entry.definitions, profile, &diagnostics);
                entry.translations = extract_translations(pos, entry.definitions, profile, &diagnostics);
                result.entries.push_back(std::move(entry));
            }
        }
    }
    return result;
}

void apply_page(PageResult&& result, Store& store, Diagnostics& diagnostics, ParseSummary& summary) {
    ++summary.pages_read;
    summary.language_headings += result.language_headings;
    summary.language_sections += result.language_sections;
    diagnostics.absorb(std::move(result.diagnostics));
    if (result.filtered) {
        ++summary.pages_filtered;
        return;
    }

    diagnostics.set_page(result.title);
    std::size_t stored = 0;
    for (const ExtractedEntry& entry : result.entries) {
        ++summary.pos_sections;
        try {
            store.store_entry(entry.key, entry.definitions, entry.relations, entry.translations);
        } catch (const UniquenessViolation& e) {
            diagnostics.report(diag::kDuplicateEntry, e.what());
            continue;
        }
        ++stored;
        summary.meanings += entry.definitions.size();
        for (const auto& group : entry.relations) summary.relations += group.targets.size();
        for (const auto& block : entry.translations) summary.translation_entries += block.entries.size();
    }
    summary.lang_pos += stored;
    if (stored == 0) {
        diagnostics.report(diag::kPageWithoutEntries);
        ++summary.pages_without_entries;
    } else {
        ++summary.entry_pages;
    }
}

namespace {

struct Finished {
    PageResult result;
    std::exception_ptr error;
};

void run_parallel(PageSource& source, const Profile& profile, Store& store, Diagnostics& diagnostics,
                  ParseSummary& summary, unsigned workers, std::size_t max_in_flight) {
    std::mutex mutex;
    std::condition_variable input_ready;
    std::condition_variable output_ready;
    std::deque<std::pair<std::size_t, RawPage>> input;
    std::map<std::size_t, Finished> finished;
    std::size_t pages_read = 0;
    bool reader_done = false;
    bool stop = false;
    std::exception_ptr reader_error;
    std::counting_semaphore<> slots(static_cast<std::ptrdiff_t>(max_in_flight));

    std::jthread reader([&] {
        while (true) {
            slots.acquire();
            std::optional<RawPage> page;
            std::exception_ptr error;
            {
                std::lock_guard lock(mutex);
                if (stop) break;
            }
            try {
                page = source.next();
            } catch (...) {
                error = std::current_exception();
            }
            std::lock_guard lock(mutex);
            if (!page) {
                reader_error = error;
                break;
            }
            input.emplace_back(pages_read++, std::move(*page));
            input_ready.notify_one();
        }
        std::lock_guard lock(mutex);
        reader_done = true;
        input_ready.notify_all();
        output_ready.notify_all();
    });

    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                std::unique_lock lock(mutex);
                input_ready.wait(lock, [&] { return !input.empty() || reader_done; });
                if (input.empty()) return;
                auto [seq, page] = std::move(input.front());
                input.pop_front();
                lock.unlock();

                Finished done;
                try {
                    done.result = process_page(page, profile);
                } catch (...) {
                    done.error = std::current_exception();
                }
                lock.lock();
                finished.emplace(seq, std::move(done));
                output_ready.notify_all();
            }
        });
    }

    std::exception_ptr writer_error;
    for (std::size_t next = 0;; ++next) {
        std::unique_lock lock(mutex);
        output_ready.wait(lock, [&] { return finished.count(next) != 0 || (reader_done && next == pages_read); });
        auto it = finished.find(next);
        if (it == finished.end()) break;
        Finished done = std::move(it->second);
        finished.erase(it);
        lock.unlock();
        try {
            if (done.error) std::rethrow_exception(done.error);
            apply_page(std::move(done.result), store, diagnostics, summary);
        } catch (...) {
            writer_error = std::current_exception();
            lock.lock();
            stop = true;
            input.clear();
            lock.unlock();
            slots.release(static_cast<std::ptrdiff_t>(max_in_flight));
            break;
        }
        slots.release();
    }

    reader.join();
    {
        std::lock_guard lock(mutex);
        reader_done = true;
        input_ready.notify_all();
    }
    pool.clear();
    if (writer_error) std::rethrow_exception(writer_error);
    if (reader_error) std::rethrow_exception(reader_error);
}

}  // namespace

ParseSummary run_pipeline(PageSource& source, const Profile& profile, Store& store, Diagnostics& diagnostics,
                          const PipelineOptions& options) {
    ParseSummary summary;
    const unsigned workers = std::max(1u, options.workers);
    auto finish = [&] {
        for (const auto& [category, n] : diagnostics.counts()) summary.diagnostics[category] = n;
    };
    if (workers == 1) {
        while (auto page = source.next()) apply_page(process_page(*page, profile), store, diagnostics, summary);
    } else {
        const std::size_t in_flight = options.max_in_flight ? options.max_in_flight : 4 * std::size_t{workers};
        run_parallel(source, profile, store, diagnostics, summary, workers, in_flight);
    }
    finish();
    return summary;
}

}  // namespace wikimrd
