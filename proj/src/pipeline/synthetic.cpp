#include <cstdio>

#include "gst/fnv.hpp"
#include "gst/pipeline.hpp"

namespace gst::pipeline {

namespace {

class FieldSampler {
public:
    FieldSampler(std::uint64_t seed, std::size_t index)
        : prefix_(std::to_string(seed) + '\x1f' + std::to_string(index) + '\x1f')
    {
    }

    /// Uniform integer in [0, range).
    std::uint64_t draw(std::string_view field, std::uint64_t range) const
    {
        return scale_hash(Fnv1a64{}.update(prefix_).update(field).value(), range);
    }

    /// Uniform micro-ratio in [0, 10^6).
    std::uint64_t micro(std::string_view field) const { return draw(field, kMicroRatioMax); }

private:
    std::string prefix_;
};

}  // namespace

std::vector<CorpusRecord> generate_synthetic_corpus(std::size_t n, std::uint64_t seed)
{
    std::vector<CorpusRecord> records;
    records.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const FieldSampler f(seed, i);
        CorpusRecord rec;
        char id[32];
        std::snprintf(id, sizeof id, "rec%06zu", i);
        rec.record_id = id;
        rec.duration_us = 1'000'000 + f.draw("duration", 59'000'001);

        auto& s = rec.signals;
        s.corrupt = f.micro("corrupt") < 50'000;
        s.dnsmos_u = 2'000'000 + f.draw("dnsmos", 2'500'001);
        s.wer_u = f.draw("wer", 250'001);

        const auto speakers = f.micro("speaker_count");
        s.speaker_count = speakers < 400'000 ? 1 : speakers < 750'000 ? 2 : 3;

        s.overlap_u = f.micro("overlap_zero") < 450'000 ? 0 : 1 + f.draw("overlap", 500'000);

        const auto bg = f.micro("background");
        s.background = bg < 300'000   ? Background::Clean
                       : bg < 550'000 ? Background::Music
                       : bg < 800'000 ? Background::Babble
                       : bg < 900'000 ? Background::Event
                                      : Background::Mixed;
        records.push_back(std::move(rec));
    }
    return records;
}

}  // namespace gst::pipeline
