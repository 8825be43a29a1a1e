"""
Stores global settings for the staircase package.  Budgets, sampling
constants, seeds, etc.  These should be accessed using the get/set
functions, not directly against the _settings struct.

Relevant functions in the combinatorics, diophantine, language and
generator modules check for the default settings in this module, and
will use them if no keyword arguments overriding them are provided.
The best example of this is the chart budget of the unfolding oracle.
Enumerating saddle connections in a big box can develop a very large
number of charts, and rather than truncate silently the oracle raises
ChartBudgetExceeded once the budget is spent.  The budget can be raised
globally:

	>>> settings.set(chart_budget = 10**6)

or for a single call:

	>>> unfold_enumerate(q, 1, SearchBox(rx, ty), chart_budget = 5000)

Keyword arguments given to a single call override the global setting
for the purpose of that one call only.

Keys:

	chart_budget: most charts unfold_enumerate may develop.
	vertex_budget: default max_vertices for enumerate_graph.
	max_run_steps: safety cap on runs that stop on a width or height target.
	sample_len: default orbit length for verify_bispecial.
	min_occurrences: fewer sampled occurrences than this is inconclusive.
	sample_denominator: denominator of generic sample points.
	seed: default seed of every randomized choice.
	random_scale: numerator range of random rational lengths.
	confirm_candidates: trace every oracle candidate, not just boundary ones.
	float_digits: significant digits of the courtesy float columns.
	log_level: level the command line tool sets on the root logger.

"""

import logging

########################################################################
# Parameters

_defaults = {
	'chart_budget' : 200000,
	'vertex_budget' : 10000,
	'max_run_steps' : 100000,
	'sample_len' : 100000,
	'min_occurrences' : 20,
	'sample_denominator' : 10007,
	'seed' : 0,
	'random_scale' : 20,
	'confirm_candidates' : True,
	'float_digits' : 12,
	'log_level' : logging.WARNING,
}

_settings = dict(_defaults)

########################################################################
# Fancy functions

def get(key, overrides=None):
	"""
	Get a setting value, from the overrides if present or the
	global defaults if necessary.

	"""
	global _settings
	try:
		return overrides[key]

	except (TypeError, KeyError):
		# It's not in the overrides list, return the local
		# module setting for it.
		return _settings[key]

def set(**kwargs):
	"""Set global default values."""
	global _settings
	unknown = [k for k in kwargs if k not in _defaults]
	if unknown:
		raise KeyError("unknown settings: " + ', '.join(sorted(unknown)))
	_settings.update(**kwargs)

def reset():
	"""Restore every setting to its default."""
	global _settings
	_settings = dict(_defaults)
