#include "coword.h"

#include <new>
#include <string>

#include "coword/error.hpp"
#include "coword/pipeline.hpp"

struct coword_error {
  int status = COWORD_ERROR_INTERNAL;
  std::string name;
  std::string message;
};

struct coword_session {
  coword::Pipeline pipeline;
  std::string digest;
};

namespace {

constexpr uint32_t kAbiVersion = 1;

void set_error(coword_error** err, int status, const char* name, const std::string& message) {
  if (!err) return;
  *err = new (std::nothrow) coword_error{status, name ? name : "INTERNAL", message};
}

// Runs fn, translating exceptions into status codes and error handles.
template <typename Fn>
coword_status guarded(coword_error** err, Fn&& fn) {
  if (err) *err = nullptr;
  try {
    fn();
    return COWORD_OK;
  } catch (const coword::Error& e) {
    set_error(err, e.status(), e.name(), e.what());
    return static_cast<coword_status>(e.status());
  } catch (const std::bad_alloc&) {
    set_error(err, COWORD_ERROR_INTERNAL, "INTERNAL", "out of memory");
    return COWORD_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(err, COWORD_ERROR_INTERNAL, "INTERNAL", e.what());
    return COWORD_ERROR_INTERNAL;
  }
}

coword_status require_session(const coword_session* session, coword_error** err) {
  if (session) return COWORD_OK;
  set_error(err, COWORD_ERROR_CONFIG, "CONFIG_ERROR", "null session handle");
  return COWORD_ERROR_CONFIG;
}

}  // namespace

extern "C" {

const char* coword_version(void) { return "1.0.0"; }

uint32_t coword_abi_version(void) { return kAbiVersion; }

coword_status coword_session_open(const char* config_path, coword_session** out,
                                  coword_error** err) {
  if (err) *err = nullptr;
  if (!out) {
    set_error(err, COWORD_ERROR_CONFIG, "CONFIG_ERROR", "null output handle");
    return COWORD_ERROR_CONFIG;
  }
  *out = nullptr;
  if (!config_path) {
    set_error(err, COWORD_ERROR_CONFIG, "CONFIG_ERROR", "null config path");
    return COWORD_ERROR_CONFIG;
  }
  return guarded(err, [&] {
    coword::PipelineConfig config = coword::load_config(config_path);
    auto* session = new coword_session{coword::Pipeline(std::move(config)), {}};
    session->digest = session->pipeline.config().digest();
    *out = session;
  });
}

void coword_session_close(coword_session* session) { delete session; }

coword_status coword_session_set_threads(coword_session* session, int threads,
                                         coword_error** err) {
  if (coword_status s = require_session(session, err)) return s;
  return guarded(err, [&] { session->pipeline.set_threads(threads); });
}

coword_status coword_session_set_cuts(coword_session* session, const int* ks, size_t count,
                                      coword_error** err) {
  if (coword_status s = require_session(session, err)) return s;
  return guarded(err, [&] {
    session->pipeline.set_cuts(std::vector<int>(ks, ks + count));
  });
}

coword_status coword_run(coword_session* session, coword_error** err) {
  if (coword_status s = require_session(session, err)) return s;
  return guarded(err, [&] { session->pipeline.run_all(); });
}

coword_status coword_run_stage(coword_session* session, const char* stage, coword_error** err) {
  if (coword_status s = require_session(session, err)) return s;
  if (!stage) {
    set_error(err, COWORD_ERROR_CONFIG, "CONFIG_ERROR", "null stage name");
    return COWORD_ERROR_CONFIG;
  }
  return guarded(err, [&] { session->pipeline.run_stage(stage); });
}

coword_status coword_trends_from_assignment(coword_session* session, const char* assignment_path,
                                            coword_error** err) {
  if (coword_status s = require_session(session, err)) return s;
  if (!assignment_path) {
    set_error(err, COWORD_ERROR_CONFIG, "CONFIG_ERROR", "null assignment path");
    return COWORD_ERROR_CONFIG;
  }
  return guarded(err, [&] { session->pipeline.trends_from_assignment(assignment_path); });
}

coword_status coword_chart_from_table(coword_session* session, const char* table_csv,
                                      const char* mode, const char* out_svg,
                                      coword_error** err) {
  if (coword_status s = require_session(session, err)) return s;
  if (!table_csv || !mode || !out_svg) {
    set_error(err, COWORD_ERROR_CONFIG, "CONFIG_ERROR", "null chart argument");
    return COWORD_ERROR_CONFIG;
  }
  return guarded(err, [&] {
    session->pipeline.chart_from_table(table_csv, coword::parse_chart_mode(mode), out_svg);
  });
}

const char* coword_session_config_digest(const coword_session* session) {
  return session ? session->digest.c_str() : "";
}

int coword_error_status(const coword_error* err) {
  return err ? err->status : COWORD_ERROR_INTERNAL;
}

const char* coword_error_name(const coword_error* err) {
  return err ? err->name.c_str() : "INTERNAL";
}

const char* coword_error_message(const coword_error* err) {
  return err ? err->message.c_str() : "unknown error";
}

void coword_error_free(coword_error* err) { delete err; }

}  // extern "C"
