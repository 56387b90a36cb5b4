#pragma once

#include <memory>
#include <string>

#include "safegate/gateway/engine.hpp"

namespace safegate::gateway {

/// JSON-over-HTTP front end for an Engine.
///
///   POST /ingest      {"camera_id","token","manifest"?,"captured_at_ms"?} -> 202 {"result_id"}
///   POST /profile     {"name","contact","images":[{"png","face"?}]}       -> 201 | 422 with labels
///   GET  /events?since=<ms>                                                -> newest-first array
///   GET  /recordings?date=YYYY-MM-DD&time=HH:MM                            -> segments or "no activity found"
///   POST /door        {"token"} where the token encrypts {"command":"open"|"close"}
///   GET  /door
///   POST /guidance    {"window":[w,h],"box":[x,y,w,h]}                    -> {"label"}
///   POST /emergency   {"camera_id"}
///   GET  /snapshot?ref=<ref>                                               -> image/png
///   GET  /health
class HttpServer {
public:
    explicit HttpServer(Engine& engine);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds the listening socket; port 0 picks a free port. Returns the bound port.
    int bind(const std::string& host, int port);
    /// Serves until stop(). Requires bind().
    void listen();
    /// bind() + listen() on a background thread.
    int start(const std::string& host, int port);
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace safegate::gateway
