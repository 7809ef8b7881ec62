#include "mutations.hpp"

#include <algorithm>

#include "gst/utf8.hpp"

namespace gst::testing {

namespace {

using V = ViolationCode;

Sentence* first_with_tokens(Document& d)
{
    auto it = std::ranges::find_if(d.sentences, [](const Sentence& s) { return !s.tokens.empty(); });
    return it == d.sentences.end() ? nullptr : &*it;
}

Sentence* first_plain(Document& d)
{
    auto it = std::ranges::find_if(d.sentences, [](const Sentence& s) { return s.marks.empty() && s.tokens.empty(); });
    return it == d.sentences.end() ? nullptr : &*it;
}

bool erase_global(Document& d, const char* key)
{
    return d.global_dims.erase(key) == 1;
}

std::vector<Mutation> build()
{
    std::vector<Mutation> m;
    m.push_back({"missing show_format", V::MissingInstruct, [](Document& d) { return erase_global(d, "global.show_format"); }});
    m.push_back({"missing style_tags", V::MissingInstruct, [](Document& d) { return erase_global(d, "global.style_tags"); }});
    m.push_back({"missing speaker gender", V::MissingInstruct, [](Document& d) {
                     return d.speakers.front().dims.erase("speaker.gender") == 1;
                 }});
    m.push_back({"unknown global key", V::UnknownKey, [](Document& d) {
                     return d.global_dims.emplace("global.mood", Caption{"sunny"}).second;
                 }});
    m.push_back({"sentence key in global layer", V::UnknownKey, [](Document& d) {
                     return d.global_dims.emplace("sentence.tone", Caption{"warm"}).second;
                 }});
    m.push_back({"token key as sentence dim", V::UnknownKey, [](Document& d) {
                     return d.sentences.front().dims.emplace("token.stress", Caption{"heavy"}).second;
                 }});
    m.push_back({"global key in speaker profile", V::UnknownKey, [](Document& d) {
                     return d.speakers.front().dims.emplace("global.atmosphere", Caption{"tense"}).second;
                 }});
    m.push_back({"sentence key on token span", V::UnknownKey, [](Document& d) {
                     Sentence* s = first_with_tokens(d);
                     return s != nullptr && (s->tokens.front().key = "sentence.pace", true);
                 }});
    m.push_back({"inverted span", V::BadSpan, [](Document& d) {
                     Sentence* s = first_with_tokens(d);
                     if (s == nullptr) return false;
                     auto& t = s->tokens.front();
                     t.span_start = t.span_end;
                     t.span_end = t.span_end - 1;
                     return true;
                 }});
    m.push_back({"span past end of text", V::BadSpan, [](Document& d) {
                     Sentence* s = first_with_tokens(d);
                     return s != nullptr && (s->tokens.front().span_end = utf8::scalar_count(s->text) + 1, true);
                 }});
    m.push_back({"empty span", V::BadSpan, [](Document& d) {
                     Sentence* s = first_with_tokens(d);
                     return s != nullptr && (s->tokens.front().span_end = s->tokens.front().span_start, true);
                 }});
    m.push_back({"undeclared speaker", V::DanglingSpeaker, [](Document& d) {
                     d.sentences.back().speaker_id = "spk999";
                     return true;
                 }});
    m.push_back({"index gap", V::BadIndexSequence, [](Document& d) {
                     d.sentences.back().index += 1;
                     return true;
                 }});
    m.push_back({"duplicate index", V::BadIndexSequence, [](Document& d) {
                     return d.sentences.size() >= 2 && (d.sentences[1].index = 0, true);
                 }});
    m.push_back({"indices start at one", V::BadIndexSequence, [](Document& d) {
                     for (auto& s : d.sentences) ++s.index;
                     return true;
                 }});
    m.push_back({"whitespace-only caption", V::BadCaption, [](Document& d) {
                     d.global_dims.at("global.topic").text = " 　 ";
                     return true;
                 }});
    m.push_back({"caption over limit", V::BadCaption, [](Document& d) {
                     d.sentences.front().dims["sentence.tone"].text = std::string(281, 'a');
                     return true;
                 }});
    m.push_back({"control char in caption", V::BadCaption, [](Document& d) {
                     d.speakers.front().dims.at("speaker.age").text = "old\nage";
                     return true;
                 }});
    m.push_back({"empty sentence text", V::BadCaption, [](Document& d) {
                     Sentence* s = first_plain(d);
                     return s != nullptr && (s->text.clear(), true);
                 }});
    m.push_back({"duplicate speaker", V::BadSpeaker, [](Document& d) {
                     d.speakers.push_back(d.speakers.front());
                     return true;
                 }});
    m.push_back({"malformed speaker id", V::BadSpeaker, [](Document& d) {
                     SpeakerProfile extra = d.speakers.front();
                     extra.speaker_id = "speaker-7";
                     d.speakers.push_back(std::move(extra));
                     return true;
                 }});
    m.push_back({"overlapping spans", V::OverlappingSpans, [](Document& d) {
                     Sentence* s = first_with_tokens(d);
                     if (s == nullptr) return false;
                     TokenAnnotation twin = s->tokens.front();
                     twin.caption.text = "twin";
                     s->tokens.push_back(twin);
                     return true;
                 }});
    m.push_back({"mark past end of text", V::BadMark, [](Document& d) {
                     Sentence& s = d.sentences.front();
                     s.marks.push_back({utf8::scalar_count(s.text) + 1, MarkKind::Interruption, std::nullopt});
                     return true;
                 }});
    m.push_back({"captioned interruption", V::BadMark, [](Document& d) {
                     d.sentences.front().marks.push_back({0, MarkKind::Interruption, Caption{"cut off"}});
                     return true;
                 }});
    m.push_back({"bad doc_id", V::BadIdentity, [](Document& d) {
                     d.doc_id = "has space";
                     return true;
                 }});
    return m;
}

}  // namespace

const std::vector<Mutation>& mutation_catalog()
{
    static const std::vector<Mutation> catalog = build();
    return catalog;
}

}  // namespace gst::testing
