#include "juris/fixtures.hpp"

#include <filesystem>
#include <fstream>

#include "juris/errors.hpp"
#include "juris/rng.hpp"

namespace juris::fixtures {

namespace fs = std::filesystem;

namespace {

corpus::Segment seg(std::string text, corpus::SegmentKind kind, std::size_t index) {
    return corpus::Segment{std::move(text), kind, index};
}

corpus::Judgment lead_case() {
    using corpus::SegmentKind;
    corpus::Judgment j;
    j.caseno = "7 HKCFAR 187";
    j.segments = {
        seg("Torture claims and the duty of the Secretary", SegmentKind::Heading, 0),
        seg("The crucial issue of principle in this appeal is whether the Secretary may rely on "
            "the unexplained rejection by UNHCR of the refugee claim of the person concerned "
            "without making any independent assessment of the torture claim. The Secretary "
            "determines every torture claim under the policy.",
            SegmentKind::Para, 1),
        seg("UNHCR refused refugee status to the applicant from Sri Lanka. An unexplained "
            "rejection by UNHCR says nothing about the substance of the torture claim.",
            SegmentKind::Para, 2),
        seg("The Secretary must give the claim anxious scrutiny and made no independent "
            "assessment here. Art 3 of the Convention prohibits the return of a person to face "
            "torture.",
            SegmentKind::Para, 3),
        seg("The respondent claimed protection because deportation would expose the person "
            "concerned to a real risk of harm. Counsel for the Secretary relied on the status "
            "decision of UNHCR alone.",
            SegmentKind::Para, 4),
        seg("The Convention requires a fair procedure before refugee status is refused.",
            SegmentKind::Quote, 5),
        seg("That approach was rejected in [1996] 2 HKLR 100, which no longer assists the "
            "Secretary. The appeal is allowed and the decision of the Secretary is quashed with "
            "good reason.",
            SegmentKind::Para, 6),
    };
    j.refs = {};
    j.dates = {"8 June 2004"};
    j.parties = {"Secretary for Security", "Applicant"};
    j.coram = {"Li CJ", "Bokhary PJ", "Chan PJ"};
    j.representation = {"Counsel for the appellant", "Counsel for the respondent"};
    return j;
}

corpus::Judgment sentencing_case() {
    using corpus::SegmentKind;
    corpus::Judgment j;
    j.caseno = "2 HKLRD 1121";
    j.segments = {
        seg("Sentencing for trafficking in dangerous drugs", SegmentKind::Heading, 0),
        seg("The Judge sentenced the defendant for trafficking in dangerous drugs. The "
            "sentencing guidelines of the court set a starting point of seven years for "
            "trafficking in ten grammes of ice.",
            SegmentKind::Para, 1),
        seg("The Judge considered the guilty plea and allowed a discount on the sentence. A "
            "police officer found the drugs and the apparatus at the flat.",
            SegmentKind::Para, 2),
        seg("The drug charge carried a sentence of eight years before the discount. Counsel "
            "argued that the sentence was excessive and the discount too small for the drug "
            "charge.",
            SegmentKind::Para, 3),
        seg("The court of appeal reviewed the sentencing principles for drug trafficking "
            "offences. As held in 7 HKCFAR 187, the judge must weigh every sentencing claim "
            "fairly.",
            SegmentKind::Para, 4),
        seg("The appeal against sentence is dismissed and the sentence stands.",
            SegmentKind::Para, 5),
    };
    j.refs = {"7 HKCFAR 187"};  // also cited in the text; the graph keeps one edge
    j.dates = {"17 March 2009"};
    j.parties = {"HKSAR", "Chow"};
    j.coram = {"Ma CJHC"};
    j.representation = {"Counsel for the appellant"};
    return j;
}

corpus::Judgment costs_case() {
    using corpus::SegmentKind;
    corpus::Judgment j;
    j.caseno = "CACV 284/2017";
    j.segments = {
        seg("", SegmentKind::Other, 0),
        seg("The appellant sought leave to appeal against the order for costs. The judge below "
            "made a fair and good assessment of the evidence.",
            SegmentKind::Para, 1),
        seg("The delay caused real harm and serious prejudice to the respondent.",
            SegmentKind::Para, 2),
        seg("Costs follow the event.", SegmentKind::Quote, 3),
        seg("Leave to appeal is refused and the application is dismissed.", SegmentKind::Para, 4),
    };
    j.refs = {"7 HKCFAR 187", "2 HKLRD 1121"};
    j.dates = {"2 November 2018"};
    j.parties = {"Wong", "Chan"};
    j.coram = {"Lam VP"};
    j.representation = {"The appellant in person", "Counsel for the respondent"};
    return j;
}

}  // namespace

std::vector<corpus::Judgment> fixture_corpus() {
    return {lead_case(), sentencing_case(), costs_case()};
}

std::string fixture_lexicon_tsv() {
    return
        "# fixture sentiment lexicon: token<TAB>valence\n"
        "good\t1.9\n"
        "great\t3.1\n"
        "fair\t2.0\n"
        "protection\t1.4\n"
        "allowed\t1.6\n"
        "harm\t-2.5\n"
        "torture\t-3.2\n"
        "risk\t-1.4\n"
        "rejected\t-1.9\n"
        "dismissed\t-1.8\n";
}

std::vector<classify::LabelledParagraph> synthetic_labels(std::size_t count, std::uint64_t seed) {
    using classify::Label;
    static const std::vector<std::vector<std::string>> pools = {
        // About
        {"background", "facts", "parties", "agreement", "property", "incident", "description",
         "contract", "events", "summary", "chronology", "lease"},
        // Ruling
        {"principle", "statute", "interpretation", "holds", "opinion", "reasoning", "authority",
         "construction", "test", "standard", "doctrine", "analysis"},
        // Allowed
        {"allowed", "granted", "succeeds", "favour", "upheld", "accepted", "relief", "awarded",
         "restored", "quashed", "vindicated", "prevails"},
        // Dismissal
        {"dismissed", "rejected", "refused", "failed", "costs", "denied", "unsuccessful",
         "struck", "abandoned", "hopeless", "untenable", "falls"},
    };
    static const std::vector<std::string> filler = {
        "the", "court", "judgment", "paragraph", "section", "matter", "application", "case",
        "order", "hearing", "judge", "counsel", "therefore", "present", "record",
    };

    Rng rng(seed);
    std::vector<classify::LabelledParagraph> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t label_id = rng.below(classify::kNumLabels);
        const auto& pool = pools[label_id];
        const std::size_t signal = 4 + rng.below(4);  // 4..7 class words
        const std::size_t noise = 4 + rng.below(5);   // 4..8 fillers
        std::string text;
        for (std::size_t k = 0; k < signal + noise; ++k) {
            if (!text.empty()) text += ' ';
            if (k < signal) {
                text += pool[rng.below(pool.size())];
            } else if (rng.uniform01() < 0.08) {
                // a touch of cross-class noise
                const auto& other = pools[rng.below(classify::kNumLabels)];
                text += other[rng.below(other.size())];
            } else {
                text += filler[rng.below(filler.size())];
            }
        }
        out.push_back(classify::LabelledParagraph{std::move(text),
                                                  static_cast<Label>(label_id), std::nullopt});
    }
    return out;
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
}

std::string file_stem_for(const std::string& caseno) {
    std::string stem;
    for (char c : caseno) {
        stem += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    }
    return stem;
}

}  // namespace

void write_fixture_corpus(const std::string& dir) {
    fs::create_directories(dir);
    std::size_t n = 0;
    for (const corpus::Judgment& j : fixture_corpus()) {
        const std::string name =
            "case" + std::to_string(++n) + "_" + file_stem_for(j.caseno) + ".json";
        write_file(fs::path(dir) / name, corpus::to_table_json(j));
    }
    // a non-json bystander that ingest must ignore
    write_file(fs::path(dir) / "README.txt", "fixture corpus\n");
}

void write_fixture_lexicon(const std::string& path) {
    write_file(path, fixture_lexicon_tsv());
}

void write_synthetic_labels(const std::string& path, std::size_t count, std::uint64_t seed) {
    std::string content;
    for (const classify::LabelledParagraph& p : synthetic_labels(count, seed)) {
        content += classify::to_string(p.label);
        content += '\t';
        content += p.text;
        content += '\n';
    }
    write_file(path, content);
}

void generate_all(const std::string& out_dir, std::uint64_t seed) {
    fs::create_directories(out_dir);
    write_fixture_corpus((fs::path(out_dir) / "corpus").string());
    write_fixture_lexicon((fs::path(out_dir) / "lexicon.tsv").string());
    write_synthetic_labels((fs::path(out_dir) / "labels.tsv").string(), 1000, seed);
}

}  // namespace juris::fixtures
