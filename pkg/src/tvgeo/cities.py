"""Curated coordinates of 200 real cities, used as planted-city centers by the
synthetic generator. Coordinates are approximate (city-scale accuracy is all
the generator needs); the list spans every inhabited continent so widely
separated subsets are easy to draw."""

from __future__ import annotations

CURATED_CITIES: tuple[tuple[str, float, float], ...] = (
    # Africa
    ("Cairo", 30.04, 31.24),
    ("Lagos", 6.45, 3.39),
    ("Kinshasa", -4.32, 15.31),
    ("Johannesburg", -26.20, 28.05),
    ("Cape Town", -33.93, 18.42),
    ("Nairobi", -1.29, 36.82),
    ("Addis Ababa", 9.03, 38.74),
    ("Dar es Salaam", -6.79, 39.21),
    ("Casablanca", 33.57, -7.59),
    ("Algiers", 36.75, 3.06),
    ("Tunis", 36.81, 10.18),
    ("Tripoli", 32.89, 13.19),
    ("Khartoum", 15.50, 32.56),
    ("Accra", 5.56, -0.19),
    ("Abidjan", 5.36, -4.01),
    ("Dakar", 14.72, -17.47),
    ("Bamako", 12.64, -8.00),
    ("Luanda", -8.84, 13.23),
    ("Lusaka", -15.39, 28.32),
    ("Harare", -17.83, 31.05),
    ("Maputo", -25.97, 32.57),
    ("Antananarivo", -18.88, 47.51),
    ("Kampala", 0.35, 32.58),
    # Middle East and the Caucasus
    ("Istanbul", 41.01, 28.98),
    ("Ankara", 39.93, 32.86),
    ("Tehran", 35.69, 51.39),
    ("Baghdad", 33.31, 44.36),
    ("Riyadh", 24.71, 46.68),
    ("Jeddah", 21.49, 39.19),
    ("Dubai", 25.20, 55.27),
    ("Doha", 25.29, 51.53),
    ("Kuwait City", 29.38, 47.99),
    ("Amman", 31.96, 35.95),
    ("Beirut", 33.89, 35.50),
    ("Muscat", 23.59, 58.41),
    ("Sanaa", 15.37, 44.19),
    ("Tbilisi", 41.72, 44.79),
    ("Baku", 40.41, 49.87),
    # South and Central Asia
    ("Mumbai", 19.08, 72.88),
    ("Delhi", 28.61, 77.21),
    ("Kolkata", 22.57, 88.36),
    ("Chennai", 13.08, 80.27),
    ("Bangalore", 12.97, 77.59),
    ("Hyderabad", 17.39, 78.49),
    ("Ahmedabad", 23.03, 72.58),
    ("Karachi", 24.86, 67.01),
    ("Lahore", 31.55, 74.34),
    ("Islamabad", 33.68, 73.05),
    ("Dhaka", 23.81, 90.41),
    ("Colombo", 6.93, 79.85),
    ("Kathmandu", 27.72, 85.32),
    ("Kabul", 34.56, 69.21),
    ("Tashkent", 41.30, 69.24),
    ("Almaty", 43.24, 76.89),
    ("Astana", 51.17, 71.43),
    # East and Southeast Asia
    ("Tokyo", 35.68, 139.69),
    ("Osaka", 34.69, 135.50),
    ("Sapporo", 43.06, 141.35),
    ("Seoul", 37.57, 126.98),
    ("Pyongyang", 39.03, 125.75),
    ("Beijing", 39.90, 116.41),
    ("Shanghai", 31.23, 121.47),
    ("Guangzhou", 23.13, 113.26),
    ("Chengdu", 30.57, 104.07),
    ("Chongqing", 29.56, 106.55),
    ("Wuhan", 30.59, 114.31),
    ("Xian", 34.34, 108.94),
    ("Harbin", 45.80, 126.53),
    ("Urumqi", 43.83, 87.62),
    ("Lhasa", 29.65, 91.14),
    ("Kunming", 25.04, 102.72),
    ("Hong Kong", 22.32, 114.17),
    ("Taipei", 25.03, 121.57),
    ("Manila", 14.60, 120.98),
    ("Hanoi", 21.03, 105.85),
    ("Ho Chi Minh City", 10.82, 106.63),
    ("Phnom Penh", 11.56, 104.92),
    ("Bangkok", 13.76, 100.50),
    ("Yangon", 16.87, 96.20),
    ("Kuala Lumpur", 3.14, 101.69),
    ("Singapore", 1.35, 103.82),
    ("Jakarta", -6.21, 106.85),
    ("Surabaya", -7.25, 112.75),
    ("Medan", 3.59, 98.67),
    ("Makassar", -5.15, 119.43),
    ("Ulaanbaatar", 47.89, 106.91),
    # Oceania and the Pacific
    ("Sydney", -33.87, 151.21),
    ("Melbourne", -37.81, 144.96),
    ("Brisbane", -27.47, 153.03),
    ("Perth", -31.95, 115.86),
    ("Adelaide", -34.93, 138.60),
    ("Darwin", -12.46, 130.84),
    ("Auckland", -36.85, 174.76),
    ("Christchurch", -43.53, 172.64),
    ("Port Moresby", -9.44, 147.18),
    ("Suva", -18.14, 178.44),
    ("Honolulu", 21.31, -157.86),
    # Europe
    ("London", 51.51, -0.13),
    ("Edinburgh", 55.95, -3.19),
    ("Dublin", 53.35, -6.26),
    ("Paris", 48.86, 2.35),
    ("Lyon", 45.76, 4.84),
    ("Marseille", 43.30, 5.37),
    ("Madrid", 40.42, -3.70),
    ("Barcelona", 41.39, 2.17),
    ("Seville", 37.39, -5.98),
    ("Lisbon", 38.72, -9.14),
    ("Rome", 41.90, 12.50),
    ("Milan", 45.46, 9.19),
    ("Naples", 40.85, 14.27),
    ("Berlin", 52.52, 13.40),
    ("Munich", 48.14, 11.58),
    ("Hamburg", 53.55, 9.99),
    ("Frankfurt", 50.11, 8.68),
    ("Vienna", 48.21, 16.37),
    ("Zurich", 47.38, 8.54),
    ("Brussels", 50.85, 4.35),
    ("Amsterdam", 52.37, 4.90),
    ("Copenhagen", 55.68, 12.57),
    ("Oslo", 59.91, 10.75),
    ("Stockholm", 59.33, 18.07),
    ("Helsinki", 60.17, 24.94),
    ("Warsaw", 52.23, 21.01),
    ("Prague", 50.08, 14.44),
    ("Budapest", 47.50, 19.04),
    ("Bucharest", 44.43, 26.10),
    ("Sofia", 42.70, 23.32),
    ("Belgrade", 44.79, 20.45),
    ("Athens", 37.98, 23.73),
    ("Kyiv", 50.45, 30.52),
    ("Odesa", 46.48, 30.73),
    ("Minsk", 53.90, 27.56),
    ("Riga", 56.95, 24.11),
    ("Tallinn", 59.44, 24.75),
    ("Moscow", 55.76, 37.62),
    ("Saint Petersburg", 59.93, 30.34),
    ("Kazan", 55.80, 49.11),
    ("Yekaterinburg", 56.84, 60.61),
    ("Novosibirsk", 55.03, 82.92),
    ("Omsk", 54.99, 73.37),
    ("Krasnoyarsk", 56.01, 92.85),
    ("Irkutsk", 52.29, 104.30),
    ("Vladivostok", 43.12, 131.89),
    # North and Central America, Caribbean
    ("Toronto", 43.65, -79.38),
    ("Montreal", 45.50, -73.57),
    ("Vancouver", 49.28, -123.12),
    ("Calgary", 51.05, -114.07),
    ("New York", 40.71, -74.01),
    ("Boston", 42.36, -71.06),
    ("Philadelphia", 39.95, -75.17),
    ("Washington", 38.91, -77.04),
    ("Chicago", 41.88, -87.63),
    ("Detroit", 42.33, -83.05),
    ("Minneapolis", 44.98, -93.27),
    ("St Louis", 38.63, -90.20),
    ("Denver", 39.74, -104.99),
    ("Salt Lake City", 40.76, -111.89),
    ("Phoenix", 33.45, -112.07),
    ("Las Vegas", 36.17, -115.14),
    ("Los Angeles", 34.05, -118.24),
    ("San Francisco", 37.77, -122.42),
    ("Portland", 45.52, -122.68),
    ("Seattle", 47.61, -122.33),
    ("Dallas", 32.78, -96.80),
    ("Houston", 29.76, -95.37),
    ("San Antonio", 29.42, -98.49),
    ("New Orleans", 29.95, -90.07),
    ("Atlanta", 33.75, -84.39),
    ("Charlotte", 35.23, -80.84),
    ("Miami", 25.76, -80.19),
    ("Anchorage", 61.22, -149.90),
    ("Mexico City", 19.43, -99.13),
    ("Guadalajara", 20.67, -103.35),
    ("Monterrey", 25.69, -100.32),
    ("Havana", 23.11, -82.37),
    ("Santo Domingo", 18.49, -69.93),
    ("Guatemala City", 14.63, -90.51),
    ("San Jose", 9.93, -84.08),
    ("Panama City", 8.98, -79.52),
    # South America
    ("Bogota", 4.71, -74.07),
    ("Medellin", 6.24, -75.58),
    ("Cali", 3.44, -76.52),
    ("Caracas", 10.48, -66.90),
    ("Quito", -0.18, -78.47),
    ("Guayaquil", -2.17, -79.92),
    ("Lima", -12.05, -77.04),
    ("La Paz", -16.49, -68.12),
    ("Santa Cruz", -17.78, -63.18),
    ("Santiago", -33.45, -70.67),
    ("Buenos Aires", -34.60, -58.38),
    ("Montevideo", -34.90, -56.16),
    ("Asuncion", -25.26, -57.58),
    ("Sao Paulo", -23.55, -46.63),
    ("Rio de Janeiro", -22.91, -43.17),
    ("Belo Horizonte", -19.92, -43.94),
    ("Brasilia", -15.78, -47.93),
    ("Salvador", -12.97, -38.50),
    ("Fortaleza", -3.72, -38.54),
    ("Manaus", -3.12, -60.02),
    ("Porto Alegre", -30.03, -51.22),
)
