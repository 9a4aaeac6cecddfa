#include <doctest.h>

#include <sstream>

#include "support.hpp"
#include "wikimrd/dump_ingest.hpp"

using namespace wikimrd;
using namespace wikimrd::testing;

namespace {

std::vector<RawPage> drain(PageSource& source) {
    std::vector<RawPage> out;
    while (auto p = source.next()) out.push_back(std::move(*p));
    return out;
}

std::vector<RawPage> parse_xml(const std::string& xml) {
    std::istringstream in(xml);
    XmlDumpReader reader(in);
    return drain(reader);
}

std::string page_xml(const std::string& title, const std::string& text, int ns = 0) {
    return "<page><title>" + title + "</title><ns>" + std::to_string(ns) +
           "</ns><revision><text xml:space=\"preserve\">" + text + "</text></revision></page>\n";
}

// Stream that hands out at most `step` bytes per read.
class TrickleBuf : public std::streambuf {
public:
    TrickleBuf(std::string data, std::size_t step) : data_(std::move(data)), step_(step) {}

protected:
    int_type underflow() override {
        if (pos_ >= data_.size()) return traits_type::eof();
        const std::size_t n = std::min(step_, data_.size() - pos_);
        setg(data_.data() + pos_, data_.data() + pos_, data_.data() + pos_ + n);
        pos_ += n;
        return traits_type::to_int_type(*gptr());
    }

private:
    std::string data_;
    std::size_t step_;
    std::size_t pos_ = 0;
};

}  // namespace

TEST_CASE("sample dump") {
    const auto pages = parse_xml(read_file(fixtures() / "sample_dump.xml"));
    REQUIRE(pages.size() == 4);
    CHECK(pages[0].title == "deal");
    CHECK(pages[0].text.find("{{transitive}}") != std::string::npos);
    CHECK(pages[1].title == "apportion");
    CHECK(pages[1].text.find("divide & [[distribute]] <!-- proportionally -->portions") != std::string::npos);
    CHECK(pages[2].is_redirect);
    CHECK_FALSE(pages[0].is_redirect);
    CHECK(pages[3].title == "share");
    CHECK(pages[3].text.rfind("==English==", 0) == 0);

    Diagnostics d;
    const auto kept = filter_main(pages, &d);
    CHECK(kept.size() == 3);
    CHECK(d.count(diag::kFilteredRedirect) == 1);
    CHECK(d.records().at(0).page == "Dealt");
}

TEST_CASE("namespaces pass through and are filtered") {
    const auto pages = parse_xml("<mediawiki>" + page_xml("Talk:x", "a", 1) + page_xml("y", "b", 0) +
                                 page_xml("Template:z", "c", 10) + "</mediawiki>");
    REQUIRE(pages.size() == 3);
    CHECK(pages[0].ns == 1);
    CHECK(pages[2].ns == 10);
    Diagnostics d;
    const auto kept = filter_main(pages, &d);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].title == "y");
    CHECK(d.count(diag::kFilteredNamespace) == 2);
}

TEST_CASE("empty and minimal documents") {
    CHECK(parse_xml("<mediawiki></mediawiki>").empty());
    CHECK(parse_xml("<?xml version=\"1.0\"?>\n<!-- c -->\n<mediawiki/>\n").empty());
    const auto pages = parse_xml("<mediawiki><page><title>a</title><ns>0</ns></page></mediawiki>");
    REQUIRE(pages.size() == 1);
    CHECK(pages[0].text.empty());
}

TEST_CASE("entities and cdata") {
    const auto pages = parse_xml("<mediawiki>" +
                                 page_xml("a&#38;b", "&lt;&gt;&quot;&apos;&amp; &#x263A; <![CDATA[<raw> & ]]>") +
                                 "</mediawiki>");
    REQUIRE(pages.size() == 1);
    CHECK(pages[0].title == "a&b");
    CHECK(pages[0].text == "<>\"'& \xE2\x98\xBA <raw> & ");
}

TEST_CASE("malformed dumps fail after yielding the complete pages") {
    const std::string good = page_xml("one", "x") + page_xml("two", "y");
    const std::vector<std::string> bad_tails = {
        "<page><title>three</title><ns>0</ns><text>unterminated",
        "<page><title>three</titel></page>",
        "<page><title>&bogus;</title></page>",
        "<page><ns>0</ns></page>",
        "<page><title>t</title><ns>zero</ns></page>",
    };
    for (const auto& tail : bad_tails) {
        std::istringstream in("<mediawiki>\n" + good + tail);
        XmlDumpReader reader(in, "dump.xml");
        std::vector<std::string> titles;
        bool threw = false;
        try {
            while (auto p = reader.next()) titles.push_back(p->title);
        } catch (const DumpError& e) {
            threw = true;
            CHECK(e.line() >= 4);
            CHECK(e.offset() > good.size());
            CHECK(std::string(e.what()).find("dump.xml") != std::string::npos);
        }
        CHECK_MESSAGE(threw, tail);
        CHECK(titles == std::vector<std::string>{"one", "two"});
    }
    CHECK_THROWS_AS(parse_xml(""), DumpError);
    CHECK_THROWS_AS(parse_xml("text"), DumpError);
    CHECK_THROWS_AS(parse_xml("<mediawiki></mediawiki><extra/>"), DumpError);
}

TEST_CASE("chunk boundaries do not matter") {
    std::string xml = "<mediawiki>";
    for (int i = 0; i < 40; ++i)
        xml += page_xml("p" + std::to_string(i), "==English==\n&amp;&#233;" + std::string(i * 37, 'z'));
    xml += "</mediawiki>";
    const auto expected = parse_xml(xml);
    REQUIRE(expected.size() == 40);
    for (std::size_t step : {1u, 2u, 3u, 7u, 64u, 1000u}) {
        TrickleBuf buf(xml, step);
        std::istream in(&buf);
        XmlDumpReader reader(in);
        const auto got = drain(reader);
        REQUIRE(got.size() == expected.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].title == expected[i].title);
            CHECK(got[i].text == expected[i].text);
        }
    }
}

TEST_CASE("fixture directories") {
    FixtureDirectoryReader reader(fixtures() / "mixed");
    const auto pages = drain(reader);
    REQUIRE(pages.size() >= 2);
    for (std::size_t i = 1; i < pages.size(); ++i) CHECK(pages[i - 1].title < pages[i].title);
    CHECK(std::any_of(pages.begin(), pages.end(), [](const RawPage& p) { return p.title == "deal"; }));
    for (const auto& p : pages) CHECK(p.ns == 0);

    const auto empty = scratch_dir("empty");
    FixtureDirectoryReader none(empty);
    CHECK_FALSE(none.next());
    std::filesystem::remove_all(empty);

    CHECK_THROWS(open_page_source(fixtures() / "no-such-file.xml"));
    auto source = open_page_source(fixtures() / "sample_dump.xml");
    CHECK(drain(*source).size() == 4);
}
