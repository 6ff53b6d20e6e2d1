"""Published (dataset, model, tier, Q, P, H) triples used by the harmonic-score check.

Cells printed as missing are omitted.
"""

ROWS = [
    (None, 'Zephyr 7B', 'SeedEx', 0.77, 0.42, 0.59),
    (None, 'Zephyr 7B', 'FeatDesc', 0.66, 0.42, 0.54),
    (None, 'Zephyr 7B', 'StatGuide', 0.66, 0.46, 0.56),
    (None, 'Zephyr 7B', 'ClinRule', 0.63, 0.41, 0.52),
    (None, 'OpenChat 3.5 GPTQ', 'SeedEx', 0.63, 0.42, 0.52),
    (None, 'OpenChat 3.5 GPTQ', 'FeatDesc', 0.64, 0.42, 0.53),
    (None, 'OpenChat 3.5 GPTQ', 'StatGuide', 0.67, 0.37, 0.52),
    (None, 'OpenChat 3.5 GPTQ', 'ClinRule', 0.63, 0.53, 0.58),
    (None, 'Nous Hermes Yi 34B', 'SeedEx', 0.64, 0.32, 0.48),
    (None, 'Nous Hermes Yi 34B', 'FeatDesc', 0.65, 0.42, 0.53),
    (None, 'Nous Hermes Yi 34B', 'StatGuide', 0.56, 0.41, 0.48),
    (None, 'Nous Hermes Yi 34B', 'ClinRule', 0.58, 0.41, 0.5),
    (None, 'OpenChat 3.5', 'SeedEx', 0.68, 0.4, 0.54),
    (None, 'OpenChat 3.5', 'FeatDesc', 0.65, 0.38, 0.52),
    (None, 'OpenChat 3.5', 'StatGuide', 0.66, 0.43, 0.55),
    (None, 'OpenChat 3.5', 'ClinRule', 0.64, 0.38, 0.51),
    (None, 'GPT-2-Large', 'SeedEx', 0.63, 0.53, 0.58),
    (None, 'GPT-2-Large', 'FeatDesc', 0.39, 0.32, 0.36),
    (None, 'GPT-2-Large', 'StatGuide', 0.51, 0.66, 0.59),
    (None, 'GPT-2-Medium', 'SeedEx', 0.5, 0.26, 0.38),
    (None, 'GPT-2-Medium', 'FeatDesc', 0.63, 0.52, 0.57),
    (None, 'GPT-2-Medium', 'StatGuide', 0.64, 0.41, 0.52),
    (None, 'GPT-2-Small', 'SeedEx', 0.43, 0.36, 0.39),
    (None, 'GPT-2-Small', 'FeatDesc', 0.49, 0.3, 0.4),
    (None, 'GPT-2-Small', 'StatGuide', 0.37, 0.43, 0.4),
    (None, 'Mistral 7B', 'SeedEx', 0.51, 0.38, 0.45),
    (None, 'Mistral 7B', 'FeatDesc', 0.58, 0.4, 0.49),
    (None, 'Mistral 7B', 'StatGuide', 0.55, 0.44, 0.49),
    (None, 'Mistral 7B', 'ClinRule', 0.64, 0.57, 0.6),
    (None, 'Qwen2 7B', 'SeedEx', 0.62, 0.37, 0.5),
    (None, 'Qwen2 7B', 'FeatDesc', 0.61, 0.27, 0.44),
    (None, 'Qwen2 7B', 'StatGuide', 0.55, 0.21, 0.38),
    (None, 'Qwen2 7B', 'ClinRule', 0.6, 0.44, 0.52),
    (None, 'InternLM2.5 7B', 'SeedEx', 0.61, 0.39, 0.5),
    (None, 'InternLM2.5 7B', 'FeatDesc', 0.63, 0.35, 0.49),
    (None, 'InternLM2.5 7B', 'StatGuide', 0.55, 0.21, 0.38),
    (None, 'InternLM2.5 7B', 'ClinRule', 0.62, 0.54, 0.58),
    (None, 'Yi 6B', 'SeedEx', 0.55, 0.27, 0.41),
    (None, 'Yi 6B', 'FeatDesc', 0.63, 0.37, 0.5),
    (None, 'Yi 6B', 'StatGuide', 0.43, 0.29, 0.36),
    (None, 'Yi 6B', 'ClinRule', 0.53, 0.78, 0.65),
    (None, 'LLaMA 2 13B', 'SeedEx', 0.68, 0.31, 0.49),
    (None, 'LLaMA 2 13B', 'FeatDesc', 0.66, 0.33, 0.5),
    (None, 'LLaMA 2 13B', 'StatGuide', 0.69, 0.33, 0.51),
    (None, 'LLaMA 2 13B', 'ClinRule', 0.67, 0.26, 0.46),
    (None, 'LLaMA 2 13B Chat', 'SeedEx', 0.6, 0.24, 0.42),
    (None, 'LLaMA 2 13B Chat', 'FeatDesc', 0.6, 0.25, 0.43),
    (None, 'LLaMA 2 13B Chat', 'StatGuide', 0.56, 0.22, 0.39),
    (None, 'LLaMA 2 13B Chat', 'ClinRule', 0.56, 0.4, 0.48),
    (None, 'LLaMA 3.1 8B', 'SeedEx', 0.55, 0.36, 0.45),
    (None, 'LLaMA 3.1 8B', 'FeatDesc', 0.62, 0.35, 0.49),
    (None, 'LLaMA 3.1 8B', 'StatGuide', 0.62, 0.24, 0.43),
    (None, 'LLaMA 3.1 8B', 'ClinRule', 0.53, 0.47, 0.5),
    (None, 'Mosaic MPT 7B', 'SeedEx', 0.57, 0.21, 0.39),
    (None, 'Mosaic MPT 7B', 'FeatDesc', 0.54, 0.23, 0.39),
    (None, 'Mosaic MPT 7B', 'StatGuide', 0.58, 0.24, 0.41),
    (None, 'Mosaic MPT 7B', 'ClinRule', 0.62, 0.71, 0.67),
    (None, 'Gemma 7B', 'SeedEx', 0.56, 0.26, 0.41),
    (None, 'Gemma 7B', 'FeatDesc', 0.6, 0.22, 0.41),
    (None, 'Gemma 7B', 'StatGuide', 0.62, 0.26, 0.44),
    (None, 'Gemma 7B', 'ClinRule', 0.6, 0.36, 0.48),
    (None, 'Nous Hermes Mistral 7B', 'SeedEx', 0.64, 0.49, 0.56),
    (None, 'Nous Hermes Mistral 7B', 'FeatDesc', 0.66, 0.45, 0.56),
    (None, 'Nous Hermes Mistral 7B', 'StatGuide', 0.71, 0.41, 0.56),
    (None, 'Nous Hermes Mistral 7B', 'ClinRule', 0.54, 0.54, 0.54),
    ('Stroke', 'Zephyr 7B', 'SeedEx', 0.56, 0.54, 0.55),
    ('Stroke', 'Zephyr 7B', 'FeatDesc', 0.69, 0.39, 0.54),
    ('Stroke', 'Zephyr 7B', 'StatGuide', 0.79, 0.57, 0.68),
    ('Stroke', 'Zephyr 7B', 'ClinRule', 0.61, 0.49, 0.55),
    ('Stroke', 'OpenChat 3.5 GPTQ', 'SeedEx', 0.71, 0.54, 0.62),
    ('Stroke', 'OpenChat 3.5 GPTQ', 'FeatDesc', 0.78, 0.57, 0.67),
    ('Stroke', 'OpenChat 3.5 GPTQ', 'StatGuide', 0.8, 0.52, 0.66),
    ('Stroke', 'OpenChat 3.5 GPTQ', 'ClinRule', 0.83, 0.44, 0.63),
    ('Stroke', 'Nous Hermes Yi 34B', 'SeedEx', 0.67, 0.54, 0.61),
    ('Stroke', 'Nous Hermes Yi 34B', 'FeatDesc', 0.88, 0.47, 0.67),
    ('Stroke', 'Nous Hermes Yi 34B', 'StatGuide', 0.87, 0.42, 0.65),
    ('Stroke', 'Nous Hermes Yi 34B', 'ClinRule', 0.74, 0.49, 0.61),
    ('Stroke', 'OpenChat 3.5', 'SeedEx', 0.82, 0.52, 0.67),
    ('Stroke', 'OpenChat 3.5', 'FeatDesc', 0.77, 0.67, 0.72),
    ('Stroke', 'OpenChat 3.5', 'StatGuide', 0.83, 0.6, 0.71),
    ('Stroke', 'OpenChat 3.5', 'ClinRule', 0.87, 0.56, 0.71),
    ('Stroke', 'GPT-2-Large', 'SeedEx', 0.54, 0.32, 0.43),
    ('Stroke', 'GPT-2-Large', 'FeatDesc', 0.51, 0.3, 0.41),
    ('Stroke', 'GPT-2-Large', 'StatGuide', 0.2, 0.4, 0.3),
    ('Stroke', 'GPT-2-Medium', 'SeedEx', 0.42, 0.25, 0.33),
    ('Stroke', 'GPT-2-Medium', 'FeatDesc', 0.42, 0.25, 0.33),
    ('Stroke', 'GPT-2-Medium', 'StatGuide', 0.44, 0.48, 0.46),
    ('Stroke', 'GPT-2-Small', 'SeedEx', 0.48, 0.25, 0.37),
    ('Stroke', 'GPT-2-Small', 'FeatDesc', 0.42, 0.25, 0.33),
    ('Stroke', 'GPT-2-Small', 'StatGuide', 0.21, 0.46, 0.33),
    ('Stroke', 'Mistral 7B', 'SeedEx', 0.7, 0.51, 0.6),
    ('Stroke', 'Mistral 7B', 'FeatDesc', 0.6, 0.53, 0.57),
    ('Stroke', 'Mistral 7B', 'StatGuide', 0.81, 0.65, 0.73),
    ('Stroke', 'Mistral 7B', 'ClinRule', 0.87, 0.43, 0.65),
    ('Stroke', 'Qwen2 7B', 'SeedEx', 0.59, 0.41, 0.5),
    ('Stroke', 'Qwen2 7B', 'FeatDesc', 0.51, 0.46, 0.49),
    ('Stroke', 'Qwen2 7B', 'StatGuide', 0.53, 0.4, 0.46),
    ('Stroke', 'Qwen2 7B', 'ClinRule', 0.42, 0.75, 0.58),
    ('Stroke', 'InternLM2.5 7B', 'SeedEx', 0.66, 0.4, 0.53),
    ('Stroke', 'InternLM2.5 7B', 'FeatDesc', 0.74, 0.58, 0.66),
    ('Stroke', 'InternLM2.5 7B', 'StatGuide', 0.59, 0.68, 0.63),
    ('Stroke', 'InternLM2.5 7B', 'ClinRule', 0.51, 0.48, 0.5),
    ('Stroke', 'Yi 6B', 'SeedEx', 0.75, 0.73, 0.74),
    ('Stroke', 'Yi 6B', 'FeatDesc', 0.8, 0.52, 0.66),
    ('Stroke', 'Yi 6B', 'StatGuide', 0.6, 0.43, 0.52),
    ('Stroke', 'Yi 6B', 'ClinRule', 0.65, 0.71, 0.68),
    ('Stroke', 'LLaMA 2 13B', 'SeedEx', 0.43, 0.26, 0.35),
    ('Stroke', 'LLaMA 2 13B', 'FeatDesc', 0.42, 0.25, 0.33),
    ('Stroke', 'LLaMA 2 13B', 'StatGuide', 0.62, 0.5, 0.56),
    ('Stroke', 'LLaMA 2 13B', 'ClinRule', 0.41, 0.33, 0.37),
    ('Stroke', 'LLaMA 2 13B Chat', 'SeedEx', 0.43, 0.37, 0.4),
    ('Stroke', 'LLaMA 2 13B Chat', 'FeatDesc', 0.5, 0.32, 0.41),
    ('Stroke', 'LLaMA 2 13B Chat', 'StatGuide', 0.62, 0.43, 0.53),
    ('Stroke', 'LLaMA 2 13B Chat', 'ClinRule', 0.64, 0.73, 0.69),
    ('Stroke', 'LLaMA 3.1 8B', 'SeedEx', 0.43, 0.62, 0.52),
    ('Stroke', 'LLaMA 3.1 8B', 'FeatDesc', 0.56, 0.69, 0.62),
    ('Stroke', 'LLaMA 3.1 8B', 'StatGuide', 0.57, 0.54, 0.55),
    ('Stroke', 'LLaMA 3.1 8B', 'ClinRule', 0.69, 0.53, 0.61),
    ('Stroke', 'Gemma 7B', 'SeedEx', 0.6, 0.3, 0.45),
    ('Stroke', 'Gemma 7B', 'FeatDesc', 0.69, 0.54, 0.61),
    ('Stroke', 'Gemma 7B', 'StatGuide', 0.28, 0.3, 0.29),
    ('Stroke', 'Gemma 7B', 'ClinRule', 0.55, 0.55, 0.55),
    ('Stroke', 'Nous Hermes Mistral 7B', 'SeedEx', 0.65, 0.51, 0.58),
    ('Stroke', 'Nous Hermes Mistral 7B', 'FeatDesc', 0.56, 0.51, 0.53),
    ('Stroke', 'Nous Hermes Mistral 7B', 'StatGuide', 0.76, 0.5, 0.63),
    ('Stroke', 'Nous Hermes Mistral 7B', 'ClinRule', 0.64, 0.52, 0.58),
    ('Cirrhosis', 'Zephyr 7B', 'SeedEx', 0.59, 0.75, 0.67),
    ('Cirrhosis', 'Zephyr 7B', 'FeatDesc', 0.66, 0.68, 0.67),
    ('Cirrhosis', 'Zephyr 7B', 'StatGuide', 0.86, 0.39, 0.63),
    ('Cirrhosis', 'Zephyr 7B', 'ClinRule', 0.5, 0.39, 0.44),
    ('Cirrhosis', 'OpenChat 3.5 GPTQ', 'SeedEx', 0.8, 0.44, 0.62),
    ('Cirrhosis', 'OpenChat 3.5 GPTQ', 'FeatDesc', 0.82, 0.39, 0.6),
    ('Cirrhosis', 'OpenChat 3.5 GPTQ', 'StatGuide', 0.61, 0.34, 0.47),
    ('Cirrhosis', 'OpenChat 3.5 GPTQ', 'ClinRule', 0.88, 0.26, 0.57),
    ('Cirrhosis', 'Nous Hermes Yi 34B', 'SeedEx', 0.84, 0.3, 0.57),
    ('Cirrhosis', 'Nous Hermes Yi 34B', 'FeatDesc', 0.85, 0.35, 0.6),
    ('Cirrhosis', 'Nous Hermes Yi 34B', 'StatGuide', 0.64, 0.32, 0.48),
    ('Cirrhosis', 'Nous Hermes Yi 34B', 'ClinRule', 0.66, 0.27, 0.47),
    ('Cirrhosis', 'OpenChat 3.5', 'SeedEx', 0.91, 0.42, 0.67),
    ('Cirrhosis', 'OpenChat 3.5', 'FeatDesc', 0.98, 0.34, 0.66),
    ('Cirrhosis', 'OpenChat 3.5', 'StatGuide', 0.72, 0.34, 0.53),
    ('Cirrhosis', 'OpenChat 3.5', 'ClinRule', 1.0, 0.26, 0.63),
    ('Cirrhosis', 'GPT-2-Small', 'SeedEx', 0.14, 0.25, 0.2),
    ('Cirrhosis', 'GPT-2-Small', 'FeatDesc', 0.0, 0.25, 0.12),
    ('Cirrhosis', 'GPT-2-Small', 'StatGuide', 0.0, 0.25, 0.12),
    ('Cirrhosis', 'Qwen2 7B', 'SeedEx', 0.65, 0.43, 0.54),
    ('Cirrhosis', 'Qwen2 7B', 'FeatDesc', 0.76, 0.35, 0.55),
    ('Cirrhosis', 'Qwen2 7B', 'StatGuide', 0.42, 0.28, 0.35),
    ('Cirrhosis', 'Qwen2 7B', 'ClinRule', 0.74, 0.28, 0.51),
    ('Cirrhosis', 'InternLM2.5 7B', 'SeedEx', 0.68, 0.5, 0.59),
    ('Cirrhosis', 'InternLM2.5 7B', 'FeatDesc', 0.7, 0.41, 0.55),
    ('Cirrhosis', 'InternLM2.5 7B', 'StatGuide', 0.52, 0.29, 0.4),
    ('Cirrhosis', 'Yi 6B', 'SeedEx', 0.22, 0.28, 0.25),
    ('Cirrhosis', 'Yi 6B', 'FeatDesc', 0.41, 0.39, 0.4),
    ('Cirrhosis', 'Yi 6B', 'StatGuide', 0.5, 0.31, 0.41),
    ('Cirrhosis', 'LLaMA 3.1 8B', 'SeedEx', 0.81, 0.36, 0.59),
    ('Cirrhosis', 'LLaMA 3.1 8B', 'FeatDesc', 0.79, 0.3, 0.54),
    ('Cirrhosis', 'LLaMA 3.1 8B', 'StatGuide', 0.61, 0.36, 0.49),
    ('Cirrhosis', 'LLaMA 3.1 8B', 'ClinRule', 0.75, 0.52, 0.63),
    ('Cirrhosis', 'StableBeluga 7B', 'SeedEx', 0.0, 0.25, 0.12),
    ('Cirrhosis', 'StableBeluga 7B', 'FeatDesc', 0.0, 0.25, 0.12),
    ('Cirrhosis', 'StableBeluga 7B', 'StatGuide', 0.0, 0.25, 0.13),
    ('Cirrhosis', 'Gemma 7B', 'SeedEx', 0.55, 0.31, 0.43),
    ('Cirrhosis', 'Gemma 7B', 'FeatDesc', 0.68, 0.29, 0.49),
    ('Cirrhosis', 'Gemma 7B', 'StatGuide', 0.0, 0.25, 0.13),
    ('Cirrhosis', 'Gemma 7B', 'ClinRule', 0.94, 0.26, 0.6),
]
