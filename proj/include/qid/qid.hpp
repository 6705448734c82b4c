#pragma once

#include <qid/exponent.hpp>
#include <qid/series.hpp>
#include <qid/theta.hpp>
#include <qid/cfrac.hpp>
#include <qid/dissection.hpp>
#include <qid/partitions.hpp>
#include <qid/claims.hpp>
#include <qid/json_io.hpp>
