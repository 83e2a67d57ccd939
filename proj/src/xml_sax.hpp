#pragma once

// Thin RAII wrapper over expat used by the XES and PNML readers.

#include <expat.h>

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "dualminer/errors.hpp"

namespace dualminer::xml {

using AttributeMap = std::map<std::string, std::string, std::less<>>;

/// Element name without any namespace prefix.
inline std::string_view local_name(std::string_view name) {
    auto colon = name.rfind(':');
    return colon == std::string_view::npos ? name : name.substr(colon + 1);
}

/// Callbacks may throw; the exception is captured, parsing stops, and the
/// exception is rethrown from parse() once control is back outside expat.
class SaxHandler {
public:
    virtual ~SaxHandler() = default;
    virtual void start(std::string_view name, const AttributeMap& attributes) = 0;
    virtual void end(std::string_view name) = 0;
    virtual void text(std::string_view) {}
};

inline void parse(std::string_view document, SaxHandler& handler) {
    struct Context {
        SaxHandler* handler;
        XML_Parser parser;
        std::exception_ptr error;
    };
    std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(XML_ParserCreate(nullptr),
                                                                                         &XML_ParserFree);
    Context ctx{&handler, parser.get(), nullptr};
    XML_SetUserData(parser.get(), &ctx);
    XML_SetElementHandler(
        parser.get(),
        [](void* data, const XML_Char* name, const XML_Char** atts) {
            auto* c = static_cast<Context*>(data);
            if (c->error) return;
            try {
                AttributeMap map;
                for (int i = 0; atts[i]; i += 2) map.emplace(atts[i], atts[i + 1]);
                c->handler->start(local_name(name), map);
            } catch (...) {
                c->error = std::current_exception();
                XML_StopParser(c->parser, XML_FALSE);
            }
        },
        [](void* data, const XML_Char* name) {
            auto* c = static_cast<Context*>(data);
            if (c->error) return;
            try {
                c->handler->end(local_name(name));
            } catch (...) {
                c->error = std::current_exception();
                XML_StopParser(c->parser, XML_FALSE);
            }
        });
    XML_SetCharacterDataHandler(parser.get(), [](void* data, const XML_Char* s, int len) {
        auto* c = static_cast<Context*>(data);
        if (c->error) return;
        try {
            c->handler->text(std::string_view(s, static_cast<std::size_t>(len)));
        } catch (...) {
            c->error = std::current_exception();
            XML_StopParser(c->parser, XML_FALSE);
        }
    });

    auto status = XML_Parse(parser.get(), document.data(), static_cast<int>(document.size()), XML_TRUE);
    if (ctx.error) std::rethrow_exception(ctx.error);
    if (status != XML_STATUS_OK) {
        throw ParseError(std::string("malformed XML: ") + XML_ErrorString(XML_GetErrorCode(parser.get())),
                         XML_GetCurrentLineNumber(parser.get()), XML_GetCurrentColumnNumber(parser.get()) + 1);
    }
}

inline std::string escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace dualminer::xml
