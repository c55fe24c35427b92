#pragma once

#include <string>

#include "loctame/syntax.hpp"

#ifndef LOCTAME_DATA_DIR
#define LOCTAME_DATA_DIR "data"
#endif

inline std::string data_path(const std::string& name) { return std::string(LOCTAME_DATA_DIR) + "/" + name; }

inline loctame::CBox load(const std::string& name) { return loctame::parse_cbox_file(data_path(name)); }
